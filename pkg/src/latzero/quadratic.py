"""Integral quadratic polynomials Q(x) = x^T F x + L^T x + t."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, ValidationError
from .intmat import IntMatrix, as_matrix, det_exact


@dataclass(frozen=True)
class QuadraticPolynomial:
    F: IntMatrix
    L: tuple[int, ...]
    t: int = 0

    def __post_init__(self):
        f = as_matrix(self.F)
        lin = tuple(int(x) for x in self.L)
        if not f.is_square:
            raise DimensionMismatch(f"quadratic part must be square, got {f.shape}")
        if len(lin) != f.nrows:
            raise DimensionMismatch(f"linear part has length {len(lin)}, expected {f.nrows}")
        for i in range(f.nrows):
            for j in range(i):
                if f[i, j] != f[j, i]:
                    raise ValidationError(f"F is not symmetric: F[{i}][{j}]={f[i, j]} != F[{j}][{i}]={f[j, i]}")
        object.__setattr__(self, "F", f)
        object.__setattr__(self, "L", lin)
        object.__setattr__(self, "t", int(self.t))

    @classmethod
    def form(cls, F) -> QuadraticPolynomial:
        """Homogeneous quadratic form with matrix ``F``."""
        f = as_matrix(F)
        return cls(f, (0,) * f.nrows, 0)

    @property
    def dim(self) -> int:
        return self.F.nrows

    def __call__(self, x: Sequence[int]) -> int:
        return evaluate(self, x)


def evaluate(q: QuadraticPolynomial, x: Sequence[int]) -> int:
    if len(x) != q.dim:
        raise DimensionMismatch(f"point of length {len(x)} for a polynomial in {q.dim} variables")
    fx = q.F @ x
    return sum(a * b for a, b in zip(x, fx)) + sum(a * b for a, b in zip(q.L, x)) + q.t


def height(q: QuadraticPolynomial) -> int:
    """Largest absolute coefficient among F, L and t."""
    return max(q.F.max_abs(), max((abs(v) for v in q.L), default=0), abs(q.t))


def is_regular(q: QuadraticPolynomial) -> bool:
    return det_exact(q.F) != 0


def restrict(q: QuadraticPolynomial, basis, offset: Sequence[int]) -> QuadraticPolynomial:
    """The polynomial ``y -> Q(offset + basis @ y)`` in ``k`` variables.

    Expanding gives quadratic part ``B^T F B``, linear part ``B^T (2 F c + L)``
    and constant ``Q(c)``.  Regularity of the result is not checked here.
    """
    b = as_matrix(basis)
    n, _ = b.shape
    if n != q.dim or len(offset) != n:
        raise DimensionMismatch(
            f"restriction of a {q.dim}-variable polynomial along {b.shape} basis and offset of length {len(offset)}"
        )
    fb = q.F @ b
    f_new = b.T @ fb
    fc = q.F @ offset
    lin = tuple(2 * a + l for a, l in zip(fc, q.L))
    l_new = b.T @ lin
    return QuadraticPolynomial(f_new, l_new, evaluate(q, offset))
