import math
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latzero import bounds
from latzero.errors import BadRank


def exact_log10(n):
    getcontext().prec = 60
    return Decimal(n).log10()


def assert_log10_up(value, big):
    want = exact_log10(big)
    got = Decimal(value.log10.numerator) / Decimal(value.log10.denominator)
    assert want <= got < want + Decimal("1e-6")


def test_rho_cases():
    assert bounds.rho(3) == 2100
    assert bounds.rho(4) == 84
    assert bounds.rho(6) == 86
    for k in range(5, 21):
        assert bounds.rho(k) == 5 * k + 19 + Fraction(74, k - 4)
    with pytest.raises(BadRank):
        bounds.rho(2)


def test_kornhauser_values():
    assert bounds.kornhauser_radius(1).exact == 296196766695424
    assert bounds.kornhauser_radius(2).exact == 56**20
    assert bounds.kornhauser_radius(2).exact > bounds.kornhauser_radius(1).exact


def test_dietmann_radius():
    assert bounds.dietmann_radius(1, 2).exact == 28**10
    assert bounds.dietmann_radius(1, 3).exact == 1
    assert_log10_up(bounds.dietmann_radius(2, 3), 2**2100)


def test_theorem_main_small_and_exponents():
    assert bounds.theorem_main_bound(1, 1, 3, 4).exact == 1
    assert bounds.theorem_main_exponents(3) == (4201, 2100)


def test_theorem_main_binary_against_big_power():
    v = bounds.theorem_main_bound(1, 1, 2, 2)
    assert_log10_up(v, 9632**3440)


def test_theorem_main_k3_root_factor():
    # det(Omega) = sqrt(2): value is 2^2100 * sqrt(2) * 1
    v = bounds.theorem_main_bound(2, 1, 3, 3)
    getcontext().prec = 60
    want = exact_log10(2**2100) + Decimal(2).sqrt().log10()
    got = Decimal(v.log10.numerator) / Decimal(v.log10.denominator)
    assert want <= got < want + Decimal("1e-6")


def test_one_out_squared():
    assert bounds.one_out_bound(1, 2).squared == Fraction(64, 9)
    assert bounds.one_out_bound(16, 2).squared == Fraction(1024, 9)
    assert bounds.one_out_bound(4, 3).squared == Fraction(4, 3) ** 6 * 9 * 4
    assert bounds.one_out_bound(16, 2).exact == Fraction(32, 3)


def test_henk_thiel_examples():
    assert bounds.henk_thiel_bound(16, 2, 2, [4], 4).exact == Fraction(5, 2)
    assert bounds.henk_thiel_bound(81, 3, 2, [9], 9).exact == Fraction(10, 3)


def test_henk_thiel_is_strict():
    v = bounds.henk_thiel_bound(16, 2, 2, [4], 4)
    assert not v.admits(Fraction(5, 2), strict=True)
    assert v.admits(2, strict=True)


def test_cassels_values():
    assert bounds.cassels_bound(2, 5).exact == 4
    assert bounds.cassels_bound(3, 5).exact == 9
    assert bounds.cassels_bound(1, 4, Fraction(7, 2)).exact == Fraction(7, 2)
    v = bounds.cassels_bound(2, 4)
    lo, hi = v.enclosure()
    assert lo * lo <= 8 <= hi * hi


def test_restricted_height_value():
    assert bounds.restricted_height_bound(2, 2, 1, 1).exact == Fraction(16, 9) * 43 * 16
    a = bounds.restricted_height_bound(3, 4, 5, 2).exact
    assert bounds.restricted_height_bound(3, 4, 5, 4).exact == 2 * a


def test_irrational_comparisons_exact():
    # (8/3) * sqrt(2) = 3.771...
    v = bounds.one_out_bound(2, 2)
    assert v.exact is None
    assert v.squared == Fraction(128, 9)
    assert v.admits(3) and not v.admits(4)
    lo, hi = v.enclosure()
    assert lo * lo <= Fraction(128, 9) <= hi * hi


def test_log_only_comparison():
    v = bounds.theorem_main_bound(1, 1, 2, 2)
    assert v.exact is None
    assert v.admits(10**100)
    with pytest.raises(ArithmeticError):
        v.compare(10**20000)


def test_json_shapes():
    assert bounds.henk_thiel_bound(16, 2, 2, [4], 4).to_json() == {"name": "henk_thiel", "exact": "5/2"}
    j = bounds.one_out_bound(2, 2).to_json()
    assert j["rounding"] == "up" and "surd" in j
    assert bounds.theorem_main_bound(1, 1, 2, 2).to_json()["rounding"] == "up"


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 50), st.integers(1, 50), st.integers(2, 4))
def test_monotone_in_det(d1, d2, k):
    lo, hi = sorted((d1, d2))
    assert bounds.one_out_bound(lo, k).compare(bounds.one_out_bound(hi, k).enclosure()[1]) >= 0
    assert bounds.restricted_height_bound(k, k + 1, lo, 3).exact <= bounds.restricted_height_bound(k, k + 1, hi, 3).exact
    assert bounds.theorem_main_bound(lo, 2, k, k + 1).log10 <= bounds.theorem_main_bound(hi, 2, k, k + 1).log10


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 30), st.integers(1, 30), st.integers(2, 7))
def test_monotone_in_height(h1, h2, n):
    lo, hi = sorted((h1, h2))
    assert bounds.cassels_bound(lo, n).enclosure()[0] <= bounds.cassels_bound(hi, n).enclosure()[1]
    assert bounds.kornhauser_radius(lo).log10 <= bounds.kornhauser_radius(hi).log10


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**6), st.integers(-5, 5), st.integers(-5, 5))
def test_surd_comparison_matches_integer_square(s, a, b):
    # a + b*sqrt(s) against an integer x, checked by squaring by hand
    v = bounds.BoundValue("t", Fraction(0), Fraction(a), Fraction(b), s)
    r = math.isqrt(s)
    for x in range(a - abs(b) * (r + 2), a + abs(b) * (r + 2) + 1):
        lhs = x - a  # compare lhs with b*sqrt(s)
        if b == 0:
            want = (lhs > 0) - (lhs < 0)
        elif b > 0:
            want = -1 if lhs < 0 else (lhs * lhs > b * b * s) - (lhs * lhs < b * b * s)
        else:
            want = 1 if lhs > 0 else (lhs * lhs < b * b * s) - (lhs * lhs > b * b * s)
        assert v.compare(x) == want
