"""Angles between integer vectors and the quadratic forms that detect them.

An angle other than a right angle is specified by ``tan^2 = q/p`` with
coprime positive ``p``, ``q``.  A nonzero ``b`` makes that angle with ``a``
(or its supplement) exactly when ``b`` is a zero of

    p*|a|^2 * sum(x_i^2) - (p+q) * (a.x)^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import RightAngle, RightAngleSpec, ZeroVector
from .intmat import IntMatrix, det_exact
from .lattice import Lattice, SublatticeSystem
from .quadratic import QuadraticPolynomial, height
from .solver import Instance, find_avoiding_zero, minimal_zero_in_box

GUARANTEE_DIM = 5


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class AngleSpec:
    p: int = 1
    q: int = 1
    right: bool = False

    def __post_init__(self):
        if self.right:
            return
        if self.p <= 0 or self.q <= 0:
            raise ValueError(f"angle needs p, q > 0, got p={self.p}, q={self.q}")
        g = math.gcd(self.p, self.q)
        object.__setattr__(self, "p", self.p // g)
        object.__setattr__(self, "q", self.q // g)

    @classmethod
    def right_angle(cls) -> AngleSpec:
        return cls(0, 0, right=True)

    @classmethod
    def from_tan_sq(cls, value: Fraction) -> AngleSpec:
        value = Fraction(value)
        return cls(value.denominator, value.numerator)

    @property
    def tan_sq(self) -> Fraction:
        if self.right:
            raise RightAngleSpec("tan^2 is undefined for a right angle")
        return Fraction(self.q, self.p)


def tan_sq(a: Sequence[int], b: Sequence[int]) -> Fraction:
    """tan^2 of the angle between ``a`` and ``b``, exact."""
    if len(a) != len(b):
        raise ValueError("vectors of different dimension")
    if not any(a) or not any(b):
        raise ZeroVector("angle with the zero vector")
    ab = _dot(a, b)
    if ab == 0:
        raise RightAngle("vectors are orthogonal")
    return Fraction(_dot(a, a) * _dot(b, b) - ab * ab, ab * ab)


@dataclass(frozen=True)
class AngleForm:
    a: tuple[int, ...]
    spec: AngleSpec
    t: int
    form: QuadraticPolynomial

    @property
    def guaranteed(self) -> bool:
        """False below dimension 5, where existence of a vector at the angle is not assured."""
        return len(self.a) >= GUARANTEE_DIM


def _angle_matrix(a: Sequence[int], spec: AngleSpec) -> IntMatrix:
    t = _dot(a, a)
    s = spec.p + spec.q
    n = len(a)
    return IntMatrix(
        [[(spec.p * t if i == j else 0) - s * a[i] * a[j] for j in range(n)] for i in range(n)]
    )


def angle_form(a: Sequence[int], spec: AngleSpec) -> AngleForm:
    a = tuple(int(x) for x in a)
    if not any(a):
        raise ZeroVector("base vector is zero")
    if spec.right:
        raise RightAngleSpec("right angles are handled by right_angle_vector")
    t = _dot(a, a)
    form = QuadraticPolynomial.form(_angle_matrix(a, spec))
    if not height(form) < 2 * (spec.p + spec.q) * t:
        raise AssertionError("angle form height exceeds 2(p+q)|a|^2")
    return AngleForm(a, spec, t, form)


def angle_form_det(a: Sequence[int], spec: AngleSpec) -> int:
    """Determinant of the angle form's matrix, computed by elimination."""
    return det_exact(angle_form(a, spec).form.F)


def angle_form_det_formula(a: Sequence[int], spec: AngleSpec) -> int:
    """Closed form -p^(n-1) q |a|^(2n)."""
    n = len(a)
    return -(spec.p ** (n - 1)) * spec.q * _dot(a, a) ** n


def _checked(a, spec: AngleSpec, b):
    if b is not None and tan_sq(a, b) != spec.tan_sq:
        raise AssertionError(f"vector {b} does not make the requested angle with {a}")
    return b


def find_angle_vector(
    a: Sequence[int], spec: AngleSpec, radius: int, orientation: str = "any"
) -> tuple[int, ...] | None:
    """Smallest ``b`` (sup-norm, then lexicographic) with tan^2 angle(a, b) = q/p.

    ``orientation="acute_side"`` keeps only ``b`` with ``a.b > 0``.
    """
    if orientation not in ("any", "acute_side"):
        raise ValueError(f"unknown orientation {orientation!r}")
    af = angle_form(a, spec)
    accept = (lambda x: _dot(af.a, x) > 0) if orientation == "acute_side" else None
    return _checked(af.a, spec, minimal_zero_in_box(af.form, radius, accept=accept))


def find_angle_vector_avoiding(
    a: Sequence[int], spec: AngleSpec, system: SublatticeSystem, radius: int, threads: int = 1
) -> tuple[int, ...] | None:
    """As :func:`find_angle_vector`, restricted to vectors outside every sublattice of Z^n."""
    af = angle_form(a, spec)
    n = len(af.a)
    if system.parent != Lattice.standard(n):
        raise ValueError("angle searches take sublattices of the standard lattice Z^n")
    system.require_proper()
    res = find_avoiding_zero(Instance(system.parent, system, af.form), radius, threads=threads)
    return _checked(af.a, spec, None if res is None else res.point)


def right_angle_vector(
    a: Sequence[int], radius: int, system: SublatticeSystem | None = None
) -> tuple[int, ...] | None:
    """Smallest nonzero ``x`` with ``a.x = 0``, optionally outside every sublattice."""
    a = tuple(int(x) for x in a)
    if not any(a):
        raise ZeroVector("base vector is zero")
    n = len(a)
    linear = QuadraticPolynomial(IntMatrix([[0] * n for _ in range(n)]), a, 0)
    accept = None
    if system is not None:
        if system.parent != Lattice.standard(n):
            raise ValueError("angle searches take sublattices of the standard lattice Z^n")
        system.require_proper()
        accept = lambda x: not system.contains(x)
    return minimal_zero_in_box(linear, radius, accept=accept)
