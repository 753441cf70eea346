import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latzero.angles import (
    AngleSpec,
    angle_form,
    angle_form_det,
    angle_form_det_formula,
    find_angle_vector,
    find_angle_vector_avoiding,
    right_angle_vector,
    tan_sq,
)
from latzero.errors import ImproperSublattice, RightAngle, RightAngleSpec, ZeroVector
from latzero.intmat import IntMatrix
from latzero.lattice import Lattice, SublatticeSystem
from latzero.quadratic import evaluate, height

import oracle

E1 = (1, 0, 0, 0, 0)


def oracle_angle(a, p, q, r, keep=lambda b: True):
    """Smallest b in the box whose angle with a has tan^2 = q/p, by direct formula."""
    t = sum(x * x for x in a)
    for b in oracle.box_by_norm(len(a), r):
        dot = sum(x * y for x, y in zip(a, b))
        if any(b) and dot and keep(b) and p * (t * sum(x * x for x in b) - dot * dot) == q * dot * dot:
            return b
    return None


def test_tan_sq_examples():
    assert tan_sq(E1, (1, 1, 0, 0, 0)) == 1
    assert tan_sq(E1, E1) == 0
    assert tan_sq((1, 2, 0, 0, 0), (2, 1, 0, 0, 0)) == Fraction(9, 16)


def test_tan_sq_errors():
    with pytest.raises(RightAngle):
        tan_sq(E1, (0, 1, 0, 0, 0))
    with pytest.raises(ZeroVector):
        tan_sq((0,) * 5, E1)


def test_spec_normalizes():
    s = AngleSpec(4, 6)
    assert (s.p, s.q) == (2, 3)
    assert AngleSpec.from_tan_sq(Fraction(9, 16)) == AngleSpec(16, 9)
    with pytest.raises(RightAngleSpec):
        AngleSpec.right_angle().tan_sq


def test_angle_form_matrices():
    assert angle_form(E1, AngleSpec(1, 1)).form.F == IntMatrix.diag([-1, 1, 1, 1, 1])
    assert angle_form(E1, AngleSpec(1, 3)).form.F == IntMatrix.diag([-3, 1, 1, 1, 1])
    f = angle_form((1, 1, 0, 0, 0), AngleSpec(1, 1)).form.F
    assert f.tolist()[:2] == [[0, -2, 0, 0, 0], [-2, 0, 0, 0, 0]]
    assert f[2, 2] == 2


def test_angle_form_rejects_bad_input():
    with pytest.raises(ZeroVector):
        angle_form((0,) * 5, AngleSpec(1, 1))
    with pytest.raises(RightAngleSpec):
        angle_form(E1, AngleSpec.right_angle())


def test_determinant_examples():
    assert angle_form_det(E1, AngleSpec(1, 1)) == -1
    assert angle_form_det((1, 1, 0, 0, 0), AngleSpec(1, 2)) == -64


def test_find_examples():
    assert find_angle_vector(E1, AngleSpec(1, 1), 1) == (-1, -1, 0, 0, 0)
    assert find_angle_vector(E1, AngleSpec(1, 1), 1, orientation="acute_side") == (1, -1, 0, 0, 0)
    assert find_angle_vector(E1, AngleSpec(1, 3), 1) == oracle_angle(E1, 1, 3, 1) == (-1, -1, -1, -1, 0)


def test_find_avoiding_examples():
    even = SublatticeSystem(Lattice.standard(5), (IntMatrix.diag([2] * 5),))
    assert find_angle_vector_avoiding(E1, AngleSpec(1, 1), even, 1) == (-1, -1, 0, 0, 0)
    assert find_angle_vector_avoiding(E1, AngleSpec(1, 1), even, 0) is None
    whole = SublatticeSystem(Lattice.standard(5), (IntMatrix.identity(5),))
    with pytest.raises(ImproperSublattice):
        find_angle_vector_avoiding(E1, AngleSpec(1, 1), whole, 1)


def test_right_angle_matches_enumeration():
    def perp(a):
        return next(b for b in oracle.box_by_norm(5, 1) if any(b) and sum(x * y for x, y in zip(a, b)) == 0)

    assert right_angle_vector(E1, 1) == perp(E1) == (0, -1, -1, -1, -1)
    assert right_angle_vector((1, 1, 0, 0, 0), 1) == perp((1, 1, 0, 0, 0)) == (-1, 1, -1, -1, -1)
    assert right_angle_vector((1,) * 5, 0) is None


vec5 = st.lists(st.integers(-4, 4), min_size=5, max_size=5).filter(any)


@settings(max_examples=150, deadline=None)
@given(vec5, vec5)
def test_form_vanishes_at_its_defining_vector(a, b):
    if sum(x * y for x, y in zip(a, b)) == 0:
        return
    ts = tan_sq(a, b)
    if ts == 0:
        return
    assert evaluate(angle_form(a, AngleSpec.from_tan_sq(ts)).form, b) == 0


@settings(max_examples=80, deadline=None)
@given(st.integers(5, 6).flatmap(lambda n: st.lists(st.integers(-10, 10), min_size=n, max_size=n).filter(any)),
       st.integers(1, 6), st.integers(1, 6))
def test_determinant_identity_and_height(a, p, q):
    spec = AngleSpec(p, q)
    af = angle_form(a, spec)
    t = sum(x * x for x in a)
    n = len(a)
    assert angle_form_det(a, spec) == -(spec.p ** (n - 1)) * spec.q * t**n == angle_form_det_formula(a, spec)
    assert height(af.form) < 2 * (spec.p + spec.q) * t


@settings(max_examples=60, deadline=None)
@given(vec5, st.integers(-3, 3).filter(bool), st.integers(1, 3), st.integers(1, 3))
def test_scaling_base_scales_form(a, c, p, q):
    spec = AngleSpec(p, q)
    f1 = angle_form(a, spec).form.F
    f2 = angle_form([c * x for x in a], spec).form.F
    assert f2 == f1.scale(c * c)


def test_find_matches_oracle():
    rng = random.Random(2)
    for _ in range(25):
        a = tuple(rng.randint(-2, 2) for _ in range(5))
        if not any(a):
            continue
        p, q = rng.randint(1, 3), rng.randint(1, 3)
        spec = AngleSpec(p, q)
        got = find_angle_vector(a, spec, 2)
        assert got == oracle_angle(a, spec.p, spec.q, 2)
        if got is not None:
            assert tan_sq(a, got) == Fraction(spec.q, spec.p)
