"""Lattices in Z^n, finite-index sublattice systems, intersections and cosets.

Conventions
-----------
A :class:`Lattice` stores its basis as the *columns* of an n x k matrix.
Sublattices are described in lattice coordinates: the *rows* of a k x k
coefficient matrix are the coordinate vectors (on the parent basis) of a
generating set.  Relation matrices ``V`` produced by :func:`intersect_sublattices`
follow the same row convention, so the ambient basis of the sublattice is
``A @ V.T``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import (
    DimensionMismatch,
    ImproperSublattice,
    RankDeficient,
    RankTooLarge,
    ReductionFailed,
    SingularSublattice,
)
from .intmat import (
    IntMatrix,
    as_matrix,
    det_exact,
    hnf_lower,
    integer_kernel,
    inverse_rational,
    pseudo_inverse,
    solve_rational,
)

MAX_REDUCTION_RANK = 4


def sup_norm(x: Sequence[int]) -> int:
    return max((abs(v) for v in x), default=0)


@dataclass(frozen=True)
class Lattice:
    basis: IntMatrix

    def __post_init__(self):
        b = as_matrix(self.basis)
        object.__setattr__(self, "basis", b)
        if b.ncols < 1 or b.nrows < b.ncols:
            raise DimensionMismatch(f"basis shape {b.shape} is not n x k with 1 <= k <= n")
        if det_exact(b.T @ b) == 0:
            raise RankDeficient("lattice basis columns are linearly dependent")

    @classmethod
    def standard(cls, n: int) -> Lattice:
        return cls(IntMatrix.identity(n))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]]) -> Lattice:
        return cls(IntMatrix.from_columns(cols))

    @property
    def ambient_dim(self) -> int:
        return self.basis.nrows

    @property
    def rank(self) -> int:
        return self.basis.ncols

    def point(self, coords: Sequence[int]) -> tuple[int, ...]:
        return self.basis @ coords

    def coordinates(self, x: Sequence[int]) -> tuple[int, ...] | None:
        """Integer coordinates of ``x`` on the basis, or None if ``x`` is not in the lattice."""
        sol = solve_rational(self.basis, x)
        if sol is None or any(v.denominator != 1 for v in sol):
            return None
        return tuple(int(v) for v in sol)


def gram_determinant(lat: Lattice) -> int:
    """det(A^T A), the squared covolume of the lattice."""
    a = lat.basis
    return det_exact(a.T @ a)


@dataclass(frozen=True)
class SublatticeSystem:
    parent: Lattice
    coeffs: tuple[IntMatrix, ...]

    def __post_init__(self):
        k = self.parent.rank
        mats = tuple(as_matrix(m) for m in self.coeffs)
        for j, m in enumerate(mats):
            if m.shape != (k, k):
                raise DimensionMismatch(f"sublattice {j}: coefficient matrix {m.shape}, expected {(k, k)}")
            if det_exact(m) == 0:
                raise SingularSublattice(f"sublattice {j} has determinant 0")
        object.__setattr__(self, "coeffs", mats)

    @property
    def m(self) -> int:
        return len(self.coeffs)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(abs(det_exact(c)) for c in self.coeffs)

    def require_proper(self) -> None:
        for j, d in enumerate(self.indices):
            if d == 1:
                raise ImproperSublattice(f"sublattice {j} has index 1 (equals the parent lattice)")

    def contains(self, coords: Sequence[int]) -> bool:
        """True if the coordinate vector lies in at least one sublattice."""
        return any(member(c, coords) for c in self.coeffs)

    def rebase(self, new_parent: Lattice, transform: IntMatrix) -> SublatticeSystem:
        """Express the system on ``new_parent``, whose basis is ``parent.basis @ transform``."""
        inv = inverse_rational(transform)
        inv_t = IntMatrix([[int(inv[j][i]) for j in range(len(inv))] for i in range(len(inv))])
        return SublatticeSystem(new_parent, tuple(c @ inv_t for c in self.coeffs))


def sublattice_from_ambient(parent: Lattice, generators: Sequence[Sequence[int]]) -> IntMatrix:
    """Coordinate rows for ambient generator vectors of a sublattice of ``parent``."""
    rows = []
    for g in generators:
        u = parent.coordinates(g)
        if u is None:
            raise DimensionMismatch(f"vector {list(g)} is not a point of the parent lattice")
        rows.append(u)
    return IntMatrix(rows, ncols=parent.rank)


@lru_cache(maxsize=4096)
def _normal_form(m: IntMatrix) -> IntMatrix:
    try:
        return hnf_lower(m)[0]
    except RankDeficient as exc:
        raise SingularSublattice(str(exc)) from None


def member(m, u: Sequence[int]) -> bool:
    """True iff ``u`` is an integer combination of the rows of the nonsingular ``m``."""
    m = as_matrix(m)
    if not m.is_square:
        raise DimensionMismatch(f"coefficient matrix {m.shape} is not square")
    v = _normal_form(m)
    k = v.nrows
    if len(u) != k:
        raise DimensionMismatch(f"coordinate vector of length {len(u)} for rank {k}")
    # solve x V = u; V lower triangular, so go from the last column down
    x = [0] * k
    for j in range(k - 1, -1, -1):
        r = u[j] - sum(x[i] * v[i, j] for i in range(j + 1, k))
        q, rem = divmod(r, v[j, j])
        if rem:
            return False
        x[j] = q
    return True


def _intersect_pair(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    k = a.nrows
    block = IntMatrix(
        [list(ra) + [-x for x in rb] for ra, rb in zip(a.T.rows, b.T.rows)]
    )
    ker = integer_kernel(block)
    gens = IntMatrix([r[:k] for r in ker.rows], ncols=k) @ a
    return hnf_lower(gens)[0]


def intersect_sublattices(system: SublatticeSystem) -> IntMatrix:
    """Normal-form relation matrix of the intersection of all sublattices."""
    if system.m == 0:
        raise ValueError("intersection of an empty sublattice system")
    cur = _normal_form(system.coeffs[0])
    for c in system.coeffs[1:]:
        cur = _intersect_pair(cur, _normal_form(c))
    return cur


@dataclass(frozen=True)
class CosetDecomposition:
    relation: IntMatrix
    index: int
    reps: tuple[tuple[int, ...], ...]


def coset_representatives(v) -> CosetDecomposition:
    """All coordinate tuples with ``0 <= q_j < v_jj``, in lexicographic order."""
    v = as_matrix(v)
    diag = [v[j, j] for j in range(v.nrows)]
    if any(x <= 0 for x in diag):
        raise ValueError("relation matrix must have a positive diagonal")
    reps = tuple(itertools.product(*(range(x) for x in diag)))
    return CosetDecomposition(v, math.prod(diag), reps)


def sublattice_basis(parent: Lattice, relation) -> IntMatrix:
    """Ambient n x k basis (columns) of the sublattice with the given relation rows."""
    return parent.basis @ as_matrix(relation).T


def _box_bounds(pinv, radius: int, offset: Sequence[int] | None):
    bounds = []
    for row in pinv:
        spread = radius * sum(abs(x) for x in row)
        centre = -sum(p * c for p, c in zip(row, offset)) if offset is not None else Fraction(0)
        bounds.append((math.ceil(centre - spread), math.floor(centre + spread)))
    return bounds


def points_in_box(
    basis: IntMatrix,
    radius: int,
    offset: Sequence[int] | None = None,
    pinv=None,
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield ``(u, x)`` with ``x = offset + basis @ u`` and ``|x| <= radius``.

    Coordinates are confined to a box derived from the pseudo-inverse of the
    basis, so the enumeration is complete.  Order is not specified.
    """
    n, k = basis.shape
    if pinv is None:
        pinv = pseudo_inverse(basis)
    bounds = _box_bounds(pinv, radius, offset)
    cols = basis.columns()
    start = tuple(offset) if offset is not None else (0,) * n
    u = [0] * k

    def rec(j: int, acc: tuple[int, ...]):
        if j == k:
            if all(-radius <= x <= radius for x in acc):
                yield tuple(u), acc
            return
        lo, hi = bounds[j]
        col = cols[j]
        for c in range(lo, hi + 1):
            u[j] = c
            yield from rec(j + 1, tuple(a + c * b for a, b in zip(acc, col)))

    yield from rec(0, start)


def first_minimum_sup(lat: Lattice, relation=None) -> int:
    """Smallest sup-norm of a nonzero lattice vector.

    With ``relation`` given, the minimum is taken over the sublattice of
    ``lat`` whose coordinate generators are the rows of ``relation``.
    """
    basis = lat.basis if relation is None else sublattice_basis(lat, relation)
    pinv = pseudo_inverse(basis)
    cap = min(sup_norm(c) for c in basis.columns())
    r = 1
    while True:
        r = min(r, cap)
        best = min(
            (sup_norm(x) for u, x in points_in_box(basis, r, pinv=pinv) if any(u)),
            default=None,
        )
        if best is not None:
            return best
        r *= 2


def _gram_schmidt_sq(vecs: list[tuple[int, ...]]):
    """Exact Gram-Schmidt: returns (mu, squared norms of the orthogonalised vectors)."""
    k = len(vecs)
    dot = lambda a, b: sum(x * y for x, y in zip(a, b))
    star: list[list[Fraction]] = []
    mu = [[Fraction(0)] * k for _ in range(k)]
    bsq = []
    for i in range(k):
        v = [Fraction(x) for x in vecs[i]]
        for j in range(i):
            mu[i][j] = dot(vecs[i], star[j]) / bsq[j]
            v = [a - mu[i][j] * b for a, b in zip(v, star[j])]
        star.append(v)
        bsq.append(dot(v, v))
    return mu, bsq


def _lll(cols: list[tuple[int, ...]]) -> list[list[int]]:
    """LLL (delta = 3/4) on ambient column vectors; returns the coordinate transform columns."""
    k = len(cols)
    vecs = list(cols)
    trans = [[int(i == j) for j in range(k)] for i in range(k)]  # trans[i] = coords of vecs[i]
    delta = Fraction(3, 4)
    i = 1
    while i < k:
        mu, bsq = _gram_schmidt_sq(vecs)
        for j in range(i - 1, -1, -1):
            q = round(mu[i][j])
            if q:
                vecs[i] = tuple(a - q * b for a, b in zip(vecs[i], vecs[j]))
                trans[i] = [a - q * b for a, b in zip(trans[i], trans[j])]
                mu, bsq = _gram_schmidt_sq(vecs)
        if bsq[i] >= (delta - mu[i][i - 1] ** 2) * bsq[i - 1]:
            i += 1
        else:
            vecs[i], vecs[i - 1] = vecs[i - 1], vecs[i]
            trans[i], trans[i - 1] = trans[i - 1], trans[i]
            i = max(i - 1, 1)
    return trans


def _is_primitive(rows: list[tuple[int, ...]]) -> bool:
    i, k = len(rows), len(rows[0])
    g = 0
    for cols in itertools.combinations(range(k), i):
        g = math.gcd(g, det_exact([[r[c] for c in cols] for r in rows]))
        if g == 1:
            return True
    return False


def hermite_certificate(lat: Lattice) -> bool:
    """Exact check of prod ||a_i||^2 <= (4/3)^(k(k-1)) * det(A^T A)."""
    k = lat.rank
    prod = math.prod(sum(x * x for x in c) for c in lat.basis.columns())
    e = k * (k - 1)
    return prod * 3**e <= 4**e * gram_determinant(lat)


def reduce_lattice(lat: Lattice) -> tuple[Lattice, IntMatrix]:
    """Short basis and the unimodular transform ``W`` with ``new.basis = lat.basis @ W``.

    LLL pre-conditioning followed by greedy successive-shortest extension:
    each new vector is the shortest one that keeps the chosen set extendable
    to a basis.  Ties go to the lexicographically largest ambient vector, so
    unit vectors come out with positive sign.
    """
    k = lat.rank
    if k > MAX_REDUCTION_RANK:
        raise RankTooLarge(f"exhaustive reduction supports rank <= {MAX_REDUCTION_RANK}, got {k}")
    pre = _lll(lat.basis.columns())
    pre_w = IntMatrix(pre).T
    pre_basis = lat.basis @ pre_w
    gram = pre_basis.T @ pre_basis
    ginv = inverse_rational(gram)
    cols = pre_basis.columns()

    chosen: list[tuple[int, ...]] = []
    for _ in range(k):
        bound = 1
        while True:
            ranges = [range(-math.isqrt(math.floor(bound * ginv[j][j])), math.isqrt(math.floor(bound * ginv[j][j])) + 1) for j in range(k)]
            best = None
            for u in itertools.product(*ranges):
                if not any(u):
                    continue
                x = tuple(sum(c * col[i] for c, col in zip(u, cols)) for i in range(lat.ambient_dim))
                nsq = sum(v * v for v in x)
                if nsq > bound:
                    continue
                key = (nsq, tuple(-v for v in x))
                if best is not None and key >= best[0]:
                    continue
                if _is_primitive(chosen + [u]):
                    best = (key, u)
            if best is not None:
                chosen.append(best[1])
                break
            bound *= 2

    w = pre_w @ IntMatrix(chosen).T
    new = Lattice(lat.basis @ w)
    if abs(det_exact(w)) != 1:
        raise ReductionFailed("reduction transform is not unimodular")
    if not hermite_certificate(new):
        raise ReductionFailed("reduced basis violates the Hermite product bound")
    return new, w


def reduced_basis(lat: Lattice) -> Lattice:
    return reduce_lattice(lat)[0]
