"""Evaluators for the explicit size bounds on small zeros and short vectors.

Most bounds have the shape ``a + b*sqrt(s)`` with rational ``a``, ``b`` and a
nonnegative integer ``s`` (only one square root ever appears), so they are
kept in that form and compared against integers exactly.  Values that are too
large to expand carry only an upward-rounded base-10 logarithm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BadRank

# values with more decimal digits than this are only reported through log10
EXACT_DIGIT_CAP = 1000
# digits kept after the point in log10 values and decimal enclosures
LOG10_DIGITS = 9
ENCLOSURE_DIGITS = 12


def ceil_frac(x: Fraction, digits: int) -> Fraction:
    scale = 10**digits
    return Fraction(math.ceil(x * scale), scale)


def _floor_frac(x: Fraction, digits: int) -> Fraction:
    scale = 10**digits
    return Fraction(math.floor(x * scale), scale)


def _log10_int(x: int) -> float:
    return math.log10(x)


def log10_upper(terms: Sequence[tuple[Fraction | int, int | Fraction]]) -> Fraction:
    """Upper bound for ``sum(coef * log10(base))`` over positive rational bases.

    Float logs are accurate to a few ulps; a relative margin of 1e-12 on every
    term absorbs that before rounding up to LOG10_DIGITS places.
    """
    total = Fraction(0)
    margin = Fraction(0)
    for coef, base in terms:
        base = Fraction(base)
        if base <= 0:
            raise ValueError("log10 of a nonpositive value")
        lg = _log10_int(base.numerator) - _log10_int(base.denominator)
        total += Fraction(coef) * Fraction(lg)
        margin += abs(Fraction(coef)) * (abs(Fraction(lg)) + 1) * Fraction(1, 10**12)
    return ceil_frac(total + margin, LOG10_DIGITS)


def _sqrt_floor_ceil(s: int) -> tuple[int, int]:
    r = math.isqrt(s)
    return r, r if r * r == s else r + 1


def _is_square(s: int) -> bool:
    return s >= 0 and math.isqrt(s) ** 2 == s


def _cmp_surd(x: Fraction, a: Fraction, b: Fraction, s: int) -> int:
    """Sign of ``x - (a + b*sqrt(s))``, computed exactly."""
    y = x - a
    if b == 0 or s == 0:
        return (y > 0) - (y < 0)
    rhs_sq = b * b * s
    if b > 0:
        if y <= 0:
            return -1
        return (y * y > rhs_sq) - (y * y < rhs_sq)
    if y >= 0:
        return 1
    return (y * y < rhs_sq) - (y * y > rhs_sq)


@dataclass(frozen=True)
class BoundValue:
    """A bound ``a + b*sqrt(s)`` (when expandable) plus an upward log10.

    ``log10`` always rounds up.  When ``s`` is None the value is only known
    through ``log10``.
    """

    name: str
    log10: Fraction
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    s: int | None = 0
    constant_C: Fraction = Fraction(1)

    @property
    def expanded(self) -> bool:
        return self.s is not None

    @property
    def exact(self) -> Fraction | None:
        if self.s is None:
            return None
        if self.b == 0 or _is_square(self.s):
            return self.a + self.b * math.isqrt(self.s)
        return None

    @property
    def squared(self) -> Fraction | None:
        """Exact square of the value, when it is a pure root ``b*sqrt(s)`` or rational."""
        if self.s is None:
            return None
        if self.a == 0:
            return self.b * self.b * self.s
        ex = self.exact
        return None if ex is None else ex * ex

    def enclosure(self, digits: int = ENCLOSURE_DIGITS) -> tuple[Fraction, Fraction]:
        """Rational (lower, upper) bracket of the value."""
        if self.s is None:
            raise ValueError(f"{self.name}: value is only available as log10")
        ex = self.exact
        if ex is not None:
            return ex, ex
        scale = 10**digits
        lo_r, hi_r = _sqrt_floor_ceil(self.s * scale * scale)
        lo_root, hi_root = Fraction(lo_r, scale), Fraction(hi_r, scale)
        if self.b >= 0:
            lo, hi = self.a + self.b * lo_root, self.a + self.b * hi_root
        else:
            lo, hi = self.a + self.b * hi_root, self.a + self.b * lo_root
        return _floor_frac(lo, digits), ceil_frac(hi, digits)

    @property
    def upper(self) -> Fraction | None:
        return None if self.s is None else self.enclosure()[1]

    def compare(self, x: int | Fraction) -> int:
        """Sign of ``x - value``.  Falls back to log10 with a safety margin for unexpanded values."""
        x = Fraction(x)
        if self.s is not None:
            return _cmp_surd(x, self.a, self.b, self.s)
        if x <= 0:
            return -1
        lx = Fraction(math.log10(x.numerator) - math.log10(x.denominator))
        if lx < self.log10 - Fraction(1, 10**6) - abs(self.log10) * Fraction(1, 10**10):
            return -1
        raise ArithmeticError(f"{self.name}: cannot decide comparison from log10 alone")

    def admits(self, x: int | Fraction, strict: bool = False) -> bool:
        """True if ``x <= value`` (or ``x < value`` when strict)."""
        c = self.compare(x)
        return c < 0 if strict else c <= 0

    def to_json(self) -> dict:
        ex = self.exact
        out: dict = {"name": self.name}
        if self.constant_C != 1:
            out["constant_C"] = frac_str(self.constant_C)
        if ex is not None and len(str(abs(ex.numerator))) <= 60:
            out["exact"] = frac_str(ex)
        elif self.s is not None and len(str(abs(self.b.numerator))) + len(str(self.s)) <= 60 and abs(self.a.numerator) < 10**60:
            lo, hi = self.enclosure()
            out["surd"] = {"a": frac_str(self.a), "b": frac_str(self.b), "s": str(self.s)}
            out["upper"] = decimal_str(hi)
            out["rounding"] = "up"
        else:
            out["log10"] = decimal_str(self.log10)
            out["rounding"] = "up"
        return out

    def display(self) -> str:
        d = self.to_json()
        if "exact" in d:
            return d["exact"]
        if "upper" in d:
            return f"<= {d['upper']}"
        return f"10^{d['log10']} (log10 rounded up)"


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def decimal_str(x: Fraction) -> str:
    """Decimal rendering of a rational with a terminating expansion."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    x = abs(x)
    whole, frac = divmod(x.numerator, x.denominator)
    if frac == 0:
        return f"{sign}{whole}"
    digits = []
    den = x.denominator
    while frac and len(digits) < 40:
        frac *= 10
        d, frac = divmod(frac, den)
        digits.append(str(d))
    return f"{sign}{whole}." + "".join(digits)


def _surd_log10(a: Fraction, b: Fraction, s: int) -> Fraction:
    """Upper log10 of a positive surd."""
    _, hi = _sqrt_floor_ceil(s)
    up = a + b * hi if b >= 0 else a + b * math.isqrt(s)
    return log10_upper([(1, up)])


def _make(name: str, a, b, s, C, log10: Fraction | None = None) -> BoundValue:
    a, b, C = Fraction(a), Fraction(b), Fraction(C)
    if log10 is None:
        log10 = _surd_log10(a, b, s)
    return BoundValue(name, log10, a, b, s, C)


def _small_enough(log10: Fraction) -> bool:
    return log10 <= EXACT_DIGIT_CAP


def _check_C(C) -> Fraction:
    C = Fraction(C)
    if C <= 0:
        raise ValueError("implied constant must be positive")
    return C


def rho(k: int) -> Fraction:
    """Exponent in the polynomial small-zero bound for k >= 3 variables."""
    if k < 3:
        raise BadRank(f"exponent defined for k >= 3, got {k}")
    if k == 3:
        return Fraction(2100)
    if k == 4:
        return Fraction(84)
    return 5 * k + 19 + Fraction(74, k - 4)


def _binary_radius(h: int) -> tuple[Fraction, bool]:
    """log10 of (28h)^(10h) and whether it is small enough to expand."""
    lg = log10_upper([(10 * h, 28 * h)])
    return lg, _small_enough(lg)


def kornhauser_radius(height_q: int) -> BoundValue:
    """(28|Q|)^(10|Q|), the binary-case radius."""
    if height_q < 1:
        raise ValueError("height must be >= 1")
    lg, small = _binary_radius(height_q)
    if small:
        return _make("kornhauser", (28 * height_q) ** (10 * height_q), 0, 0, 1, lg)
    return BoundValue("kornhauser", lg, s=None)


def dietmann_radius(height_g: int, k: int, C=1) -> BoundValue:
    """Radius for a small zero of a k-variable polynomial of the given height.

    For k = 2 the constant is 1 and ``C`` is ignored.
    """
    if height_g < 1:
        raise ValueError("height must be >= 1")
    if k < 2:
        raise BadRank(f"radius defined for k >= 2, got {k}")
    if k == 2:
        v = kornhauser_radius(height_g)
        return BoundValue("dietmann", v.log10, v.a, v.b, v.s)
    C = _check_C(C)
    r = rho(k)
    lg = log10_upper([(1, C), (r, height_g)])
    if r.denominator == 1 and _small_enough(lg):
        return _make("dietmann", C * height_g ** int(r), 0, 0, C, lg)
    return BoundValue("dietmann", lg, s=None, constant_C=C)


def theorem_main_bound(det_omega_sq: int, height_q: int, k: int, n: int, C=1) -> BoundValue:
    """Size bound for a zero of Q avoiding a union of finite-index sublattices.

    ``det_omega_sq`` is the squared covolume of the intersection sublattice;
    only the single factor det(Omega) carries a square root.
    """
    if det_omega_sq < 1 or height_q < 1:
        raise ValueError("det_omega_sq and height must be >= 1")
    if k < 2:
        raise BadRank(f"bound defined for k >= 2, got {k}")
    C = _check_C(C)
    if k == 2:
        base = 2408 * n * n * det_omega_sq * height_q
        expo = 860 * n * n * det_omega_sq * height_q
        lg = log10_upper([(1, C), (Fraction(1, 2), det_omega_sq), (expo, base)])
        if _small_enough(lg):
            return _make("theorem_main", 0, C * base**expo, det_omega_sq, C, lg)
        return BoundValue("theorem_main", lg, s=None, constant_C=C)
    r = rho(k)
    lg = log10_upper([(1, C), (r, det_omega_sq), (Fraction(1, 2), det_omega_sq), (r, height_q)])
    if r.denominator == 1 and _small_enough(lg):
        coeff = C * det_omega_sq ** int(r) * height_q ** int(r)
        return _make("theorem_main", 0, coeff, det_omega_sq, C, lg)
    return BoundValue("theorem_main", lg, s=None, constant_C=C)


def theorem_main_exponents(k: int) -> tuple[Fraction, Fraction]:
    """Exponents (on det(Omega), on |Q|) of the k >= 3 bound."""
    r = rho(k)
    return 2 * r + 1, r


def one_out_bound(det_omega_sq: int, k: int) -> BoundValue:
    """(4/3)^(k(k-1)/2) * k * det(Omega): a point outside the union exists within this."""
    if det_omega_sq < 1:
        raise ValueError("det_omega_sq must be >= 1")
    coeff = Fraction(4, 3) ** (k * (k - 1) // 2) * k
    return _make("one_out", 0, coeff, det_omega_sq, 1)


def henk_thiel_bound(
    det_omega_sq: int, lambda1: int, k: int, indices: Sequence[int], d: int
) -> BoundValue:
    """Strict bound for the shortest point outside the union.

    Equal to ``lambda1 + det(Omega) * (sum 1/d_i - (m-1)/d) / lambda1^(k-1)``.
    """
    if lambda1 < 1 or d < 1:
        raise ValueError("lambda1 and d must be >= 1")
    m = len(indices)
    dens = sum((Fraction(1, di) for di in indices), Fraction(0)) - Fraction(m - 1, d)
    b = dens / Fraction(lambda1) ** (k - 1)
    return _make("henk_thiel", lambda1, b, det_omega_sq, 1)


def cassels_bound(height_f: int, n: int, C=1) -> BoundValue:
    """C * |F|^((n-1)/2)."""
    if height_f < 1 or n < 2:
        raise ValueError("need height >= 1 and n >= 2")
    C = _check_C(C)
    half, odd = divmod(n - 1, 2)
    if odd:
        return _make("cassels", 0, C * height_f**half, height_f, C)
    return _make("cassels", C * height_f**half, 0, 0, C)


def restricted_height_bound(k: int, n: int, det_omega_sq: int, height_q: int) -> BoundValue:
    """Crude bound on the height of Q restricted to a coset of the intersection."""
    e = k * (k - 1)
    val = Fraction(4, 3) ** e * (n * n * (k + 1) ** 2 + n * (k + 1) + 1) * n * n * k * k * det_omega_sq * height_q
    return _make("restricted_height", val, 0, 0, 1)


def angle_bound(p: int, q: int, norm_sq: int, n: int, C=1) -> BoundValue:
    """C * (2(p+q)||a||^2)^((n-1)/2), the radius for a vector at a prescribed angle."""
    v = cassels_bound(2 * (p + q) * norm_sq, n, C)
    return BoundValue("angle", v.log10, v.a, v.b, v.s, v.constant_C)


def angle_avoiding_bound(det_omega_sq: int, p: int, q: int, norm_sq: int, n: int, C=1) -> BoundValue:
    v = theorem_main_bound(det_omega_sq, 2 * (p + q) * norm_sq, n, n, C)
    return BoundValue("angle_avoiding", v.log10, v.a, v.b, v.s, v.constant_C)


def hermite_factor_sq(k: int) -> Fraction:
    """(4/3)^(k(k-1)), the squared Hermite constant factor."""
    return Fraction(4, 3) ** (k * (k - 1))


def coset_norm_ok(norm: int, k: int, det_omega_sq: int) -> bool:
    """|c|^2 <= (4/3)^(k(k-1)) k^2 det(Omega)^2, exact."""
    return norm * norm <= hermite_factor_sq(k) * k * k * det_omega_sq


def assembly_ok(norm: int, k: int, det_omega_sq: int, offset_norm: int) -> bool:
    """|z|^2 <= (4/3)^(k(k-1)) k^2 det(Omega)^2 (1 + k|z'|)^2, exact."""
    return norm * norm <= hermite_factor_sq(k) * k * k * det_omega_sq * (1 + k * offset_norm) ** 2
