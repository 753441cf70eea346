"""Exact integer matrices: triangular normal form, integer kernels, determinants.

Everything here works on Python ints, so magnitudes are unbounded.  Matrices
are immutable; operations return new objects.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotSquare, RankDeficient


class IntMatrix:
    """Immutable rectangular integer matrix stored row-major.

    A matrix may have zero rows (an empty kernel basis), but the column count
    is always kept so shapes stay meaningful.
    """

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise DimensionMismatch("empty matrix needs an explicit column count")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise DimensionMismatch(f"ragged rows: expected {ncols} columns, got {len(r)}")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence[int]) -> IntMatrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]]) -> IntMatrix:
        return cls(cols).T

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    @property
    def is_square(self) -> bool:
        return len(self.rows) == self.ncols

    @property
    def T(self) -> IntMatrix:
        return IntMatrix([[r[j] for r in self.rows] for j in range(self.ncols)], ncols=len(self.rows))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.rows, self.ncols))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.rows]!r})"

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return IntMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows],
                ncols=other.ncols,
            )
        # matrix-vector product
        v = tuple(other)
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix([[c * x for x in r] for r in self.rows], ncols=self.ncols)

    def max_abs(self) -> int:
        return max((abs(x) for r in self.rows for x in r), default=0)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def det(self) -> int:
        return det_exact(self)


def as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(m)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def det_exact(m) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    m = as_matrix(m)
    if not m.is_square:
        raise NotSquare(f"determinant of non-square {m.shape} matrix")
    n = m.nrows
    if n == 0:
        return 1
    a = [list(r) for r in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _echelon(m: IntMatrix) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Row-reduce to a "lower" echelon form whose pivots are last nonzero entries.

    Returns (H, U, pivots): H = U*M with U unimodular.  The first
    ``nrows - len(pivots)`` rows of H are zero; the remaining rows have pivot
    columns ``pivots`` (strictly increasing), positive pivots, zeros to the
    right of each pivot, and entries in an earlier row's pivot column reduced
    into ``[0, pivot)``.
    """
    r, c = m.shape
    h = [list(row) for row in m.rows]
    u = [[int(i == j) for j in range(r)] for i in range(r)]
    active = list(range(r))
    found: list[tuple[int, int]] = []  # (pivot column, row index), in discovery order

    for col in range(c - 1, -1, -1):
        nz = [i for i in active if h[i][col] != 0]
        if not nz:
            continue
        p = min(nz, key=lambda i: (abs(h[i][col]), i))
        for i in nz:
            if i == p:
                continue
            x, y = h[p][col], h[i][col]
            if y % x == 0:
                q = y // x
                h[i] = [b - q * a for a, b in zip(h[p], h[i])]
                u[i] = [b - q * a for a, b in zip(u[p], u[i])]
                continue
            g, s, t = xgcd(x, y)
            xg, yg = x // g, y // g
            hp, hi, up, ui = h[p], h[i], u[p], u[i]
            h[p] = [s * a + t * b for a, b in zip(hp, hi)]
            h[i] = [yg * a - xg * b for a, b in zip(hp, hi)]
            u[p] = [s * a + t * b for a, b in zip(up, ui)]
            u[i] = [yg * a - xg * b for a, b in zip(up, ui)]
        if h[p][col] < 0:
            h[p] = [-a for a in h[p]]
            u[p] = [-a for a in u[p]]
        active.remove(p)
        found.append((col, p))

    found.reverse()
    order = active + [i for _, i in found]
    h = [h[i] for i in order]
    u = [u[i] for i in order]
    pivots = [col for col, _ in found]

    z = len(active)
    # Reducing row b by row a disturbs row b only left of pivot column pc, so
    # later (smaller) pivot columns must be handled after larger ones.
    for b in range(len(pivots)):
        pb = z + b
        for a in range(b - 1, -1, -1):
            pa, pc = z + a, pivots[a]
            q = h[pb][pc] // h[pa][pc]
            if q:
                h[pb] = [y - q * x for x, y in zip(h[pa], h[pb])]
                u[pb] = [y - q * x for x, y in zip(u[pa], u[pb])]
    return h, u, pivots


def hnf_lower(m) -> tuple[IntMatrix, IntMatrix]:
    """Lower-triangular normal form of the row lattice of ``m``.

    Returns ``(V, U)`` with ``V = U @ m``, ``U`` unimodular.  For a square
    input ``V`` is lower triangular with positive diagonal and
    ``0 <= V[i][j] < V[j][j]`` for ``j < i``.  Wide inputs (k x c, c > k)
    come back in the analogous echelon shape, pivots being last nonzero
    entries.

    Raises RankDeficient when the rows are dependent over the rationals.
    """
    m = as_matrix(m)
    h, u, pivots = _echelon(m)
    if len(pivots) != m.nrows:
        raise RankDeficient(f"rows of {m.shape} matrix have rank {len(pivots)}")
    return IntMatrix(h, m.ncols), IntMatrix(u, m.nrows)


def is_hnf_lower(v) -> bool:
    v = as_matrix(v)
    if not v.is_square:
        return False
    k = v.nrows
    for i in range(k):
        if v[i, i] <= 0:
            return False
        for j in range(k):
            if j > i and v[i, j] != 0:
                return False
            if j < i and not 0 <= v[i, j] < v[j, j]:
                return False
    return True


def integer_kernel(m) -> IntMatrix:
    """Basis (as rows) of ``{x in Z^c : m x = 0}``, in normal form."""
    m = as_matrix(m)
    _, c = m.shape
    if m.nrows == 0:
        return IntMatrix.identity(c)
    h, u, pivots = _echelon(m.T)
    nker = c - len(pivots)
    if nker == 0:
        return IntMatrix([], c)
    return hnf_lower(IntMatrix(u[:nker], c))[0]


def solve_rational(m, b: Sequence) -> list[Fraction] | None:
    """Solve ``m x = b`` over the rationals for a full-column-rank ``m``.

    Returns None when the system is inconsistent.
    """
    m = as_matrix(m)
    r, c = m.shape
    if len(b) != r:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {m.shape} matrix")
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(m.rows, b)]
    row = 0
    piv_cols = []
    for col in range(c):
        sel = next((i for i in range(row, r) if a[i][col] != 0), None)
        if sel is None:
            continue
        a[row], a[sel] = a[sel], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for i in range(r):
            if i != row and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        piv_cols.append(col)
        row += 1
    if len(piv_cols) != c:
        raise RankDeficient(f"{m.shape} matrix does not have full column rank")
    if any(a[i][c] != 0 for i in range(row, r)):
        return None
    return [a[i][c] for i in range(c)]


def inverse_rational(m) -> list[list[Fraction]]:
    m = as_matrix(m)
    if not m.is_square:
        raise NotSquare(f"inverse of non-square {m.shape} matrix")
    n = m.nrows
    cols = []
    for j in range(n):
        x = solve_rational(m, [int(i == j) for i in range(n)])
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def pseudo_inverse(m) -> list[list[Fraction]]:
    """``(m^T m)^{-1} m^T`` for a full-column-rank ``m``; maps column space points to coordinates."""
    m = as_matrix(m)
    g = m.T @ m
    gi = inverse_rational(g)
    mt = m.T.rows
    return [[sum(gi[i][l] * mt[l][j] for l in range(len(gi))) for j in range(m.nrows)] for i in range(len(gi))]
