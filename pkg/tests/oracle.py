"""Slow, independent reference computations used by the tests.

Nothing here imports latzero: membership uses rational Gaussian elimination,
searches walk plain integer boxes in (sup-norm, lexicographic) order.
"""
import itertools
from fractions import Fraction


def solve(cols, x):
    """Rational coefficients c with sum c_j * cols[j] = x, or None."""
    n, k = len(x), len(cols)
    a = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(x[i])] for i in range(n)]
    row = 0
    piv = []
    for c in range(k):
        r = next((r for r in range(row, n) if a[r][c] != 0), None)
        if r is None:
            continue
        a[row], a[r] = a[r], a[row]
        for r2 in range(n):
            if r2 != row and a[r2][c] != 0:
                f = a[r2][c] / a[row][c]
                a[r2] = [u - f * v for u, v in zip(a[r2], a[row])]
        piv.append(c)
        row += 1
    if any(a[r][k] != 0 for r in range(row, n)):
        return None
    out = [Fraction(0)] * k
    for r, c in enumerate(piv):
        out[c] = a[r][k] / a[r][c]
    return out


def in_span_z(gens, u):
    """u lies in the Z-span of the rows ``gens`` (square, nonsingular)."""
    cols = [list(g) for g in gens]
    c = solve(cols, u)
    return c is not None and all(v.denominator == 1 for v in c)


def box_by_norm(n, r):
    """Points of Z^n with sup-norm <= r sorted by (sup-norm, lexicographic)."""
    pts = itertools.product(range(-r, r + 1), repeat=n)
    return sorted(pts, key=lambda x: (max((abs(v) for v in x), default=0), x))


def qvalue(F, L, t, x):
    n = len(x)
    return sum(F[i][j] * x[i] * x[j] for i in range(n) for j in range(n)) + sum(a * b for a, b in zip(L, x)) + t


def min_zero(F, L, t, r, keep=lambda x: True):
    for x in box_by_norm(len(L), r):
        if any(x) and keep(x) and qvalue(F, L, t, x) == 0:
            return x
    return None


def det(m):
    """Cofactor expansion; fine for the small sizes used here."""
    m = [list(r) for r in m]
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * det([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(len(m)) if m[0][j])


def lattice_points(basis_cols, r):
    """Ambient points of the lattice spanned by ``basis_cols`` with sup-norm <= r."""
    n = len(basis_cols[0])
    out = []
    for x in itertools.product(range(-r, r + 1), repeat=n):
        c = solve(basis_cols, x)
        if c is not None and all(v.denominator == 1 for v in c):
            out.append((tuple(int(v) for v in c), x))
    return out


def adjugate(m):
    k = len(m)
    if k == 1:
        return [[1]]
    minor = lambda i, j: [r[:j] + r[j + 1:] for t, r in enumerate(m) if t != i]
    return [[(-1) ** (i + j) * det(minor(j, i)) for j in range(k)] for i in range(k)]


def row_lattice_test(gens):
    """Membership test for the row lattice of a nonsingular integer matrix.

    u = x M has integer x iff u adj(M) is divisible by det(M).
    """
    d = det(gens)
    adj = adjugate(gens)
    k = len(gens)

    def test(u):
        return all(sum(u[i] * adj[i][j] for i in range(k)) % d == 0 for j in range(k))

    return test
