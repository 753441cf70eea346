"""Exhaustive minimal-zero searches on lattices and their cosets.

All searches return the point of minimal sup-norm, breaking ties by the
lexicographic order of the ambient coordinates.  Searches grow the radius by
doubling and stop at the first radius that contains a hit; since every point
within that radius has been examined, the minimum is global.
"""
from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from . import bounds
from .errors import (
    CoveredByUnion,
    DimensionMismatch,
    ImproperSublattice,
    NotRegular,
    RankTooLarge,
    RestrictedFormSingular,
)
from .intmat import IntMatrix, det_exact, pseudo_inverse
from .lattice import (
    Lattice,
    SublatticeSystem,
    coset_representatives,
    gram_determinant,
    intersect_sublattices,
    member,
    points_in_box,
    reduce_lattice,
    sublattice_basis,
    sup_norm,
)
from .quadratic import QuadraticPolynomial, evaluate, height, is_regular, restrict


@dataclass(frozen=True)
class Instance:
    lattice: Lattice
    system: SublatticeSystem
    poly: QuadraticPolynomial

    def __post_init__(self):
        if self.system.parent != self.lattice:
            raise DimensionMismatch("sublattice system is defined over a different lattice")
        if self.poly.dim != self.lattice.ambient_dim:
            raise DimensionMismatch(
                f"polynomial has {self.poly.dim} variables, lattice lives in Z^{self.lattice.ambient_dim}"
            )


@dataclass(frozen=True)
class SearchResult:
    point: tuple[int, ...]
    sup_norm: int
    coset_index: int | None = None
    coset_rep: tuple[int, ...] | None = None
    offset_coords: tuple[int, ...] | None = None
    certificate: dict = field(default_factory=dict)


def _radii(limit: int) -> Iterator[int]:
    r = 1
    while r < limit:
        yield r
        r *= 2
    if limit >= 1:
        yield limit


def _shell(n: int, r: int) -> Iterator[tuple[int, ...]]:
    """Points of Z^n with sup-norm exactly r (r >= 1)."""
    inner = range(-r + 1, r)
    full = range(-r, r + 1)

    def rec(i: int, hit: bool, acc: tuple[int, ...]):
        if i == n:
            if hit:
                yield acc
            return
        for x in (full if hit else inner):
            yield from rec(i + 1, hit, acc + (x,))
        if not hit:
            for x in (-r, r):
                yield from rec(i + 1, True, acc + (x,))

    yield from rec(0, False, ())


_INT64_SAFE = 2**62


def _int64_safe(q: QuadraticPolynomial, r: int) -> bool:
    n = q.dim
    worst = n * n * q.F.max_abs() * r * r + n * max((abs(v) for v in q.L), default=0) * r + abs(q.t)
    return n >= 2 and worst < _INT64_SAFE


def _shell_zeros_numpy(q: QuadraticPolynomial, r: int) -> Iterator[tuple[int, ...]]:
    """Zeros of ``q`` with sup-norm exactly r, in lexicographic order (int64 arithmetic).

    Splits x = (x_1, rest) and tabulates the rest-only part of Q once per
    shell, so each value of x_1 costs a single vector update.
    """
    n = q.dim
    f = np.array(q.F.rows, dtype=np.int64)
    lin = np.array(q.L, dtype=np.int64)
    side = np.arange(-r, r + 1, dtype=np.int64)
    rest = np.stack(np.meshgrid(*([side] * (n - 1)), indexing="ij"), axis=-1).reshape(-1, n - 1)
    q_rest = np.einsum("ij,jk,ik->i", rest, f[1:, 1:], rest) + rest @ lin[1:] + q.t
    cross = 2 * (rest @ f[0, 1:])
    on_shell = np.abs(rest).max(axis=1) == r
    for x1 in range(-r, r + 1):
        vals = f[0, 0] * x1 * x1 + lin[0] * x1 + x1 * cross + q_rest
        mask = vals == 0
        if abs(x1) != r:
            mask &= on_shell
        for idx in np.flatnonzero(mask):
            yield (x1,) + tuple(int(v) for v in rest[idx])


def minimal_zero_in_box(
    q: QuadraticPolynomial,
    radius: int,
    exclude_zero: bool = True,
    accept: Callable[[tuple[int, ...]], bool] | None = None,
) -> tuple[int, ...] | None:
    """Zero of ``q`` in Z^n of minimal sup-norm at most ``radius``.

    ``accept`` optionally filters candidate zeros.  Shells are searched in
    order of increasing radius; ties within a shell go to the
    lexicographically smallest point.  Shells whose values provably fit in
    int64 are evaluated with numpy, the rest with Python integers.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    n = q.dim
    origin = (0,) * n
    if not exclude_zero and q.t == 0 and (accept is None or accept(origin)):
        return origin
    for r in range(1, radius + 1):
        if _int64_safe(q, r):
            for x in _shell_zeros_numpy(q, r):
                if accept is None or accept(x):
                    return x
            continue
        best = None
        for x in _shell(n, r):
            if (best is None or x < best) and evaluate(q, x) == 0 and (accept is None or accept(x)):
                best = x
        if best is not None:
            return best
    return None


def _best(cands):
    return min(cands, key=lambda c: (c[0], c[1]), default=None)


def bruteforce_avoiding_zero(inst: Instance, radius: int) -> SearchResult | None:
    """Reference search: every lattice point within ``radius``, filtered directly.

    Works on the instance's own basis and sublattice matrices; an empty system
    reduces to the minimal nontrivial zero of Q on the lattice.
    """
    basis = inst.lattice.basis
    pinv = pseudo_inverse(basis)
    coeffs = inst.system.coeffs
    for r in _radii(radius):
        hits = [
            (sup_norm(x), x)
            for u, x in points_in_box(basis, r, pinv=pinv)
            if any(u) and evaluate(inst.poly, x) == 0 and not any(member(c, u) for c in coeffs)
        ]
        best = _best(hits)
        if best is not None:
            return SearchResult(best[1], best[0])
    return None


def point_outside_union_bruteforce(lattice: Lattice, system: SublatticeSystem, radius: int) -> SearchResult | None:
    """Shortest lattice point (sup-norm) outside every sublattice, by direct enumeration."""
    basis = lattice.basis
    pinv = pseudo_inverse(basis)
    for r in _radii(radius):
        hits = [
            (sup_norm(x), x)
            for u, x in points_in_box(basis, r, pinv=pinv)
            if not system.contains(u)
        ]
        best = _best(hits)
        if best is not None:
            return SearchResult(best[1], best[0])
    return None


@dataclass(frozen=True)
class _Decomposition:
    lattice: Lattice  # parent with reduced basis
    system: SublatticeSystem  # rebased onto ``lattice``
    relation: IntMatrix
    omega_basis: IntMatrix
    det_omega_sq: int
    reps: tuple[tuple[int, ...], ...]


def decompose(lattice: Lattice, system: SublatticeSystem) -> _Decomposition:
    """Reduce the parent basis, intersect the sublattices and list coset representatives."""
    try:
        red, w = reduce_lattice(lattice)
        sys_red = system.rebase(red, w)
    except RankTooLarge:
        red, sys_red = lattice, system
    v = intersect_sublattices(sys_red)
    dec = coset_representatives(v)
    b = sublattice_basis(red, v)
    return _Decomposition(red, sys_red, v, b, gram_determinant(Lattice(b)), dec.reps)


def point_outside_union(lattice: Lattice, system: SublatticeSystem) -> SearchResult:
    """Shortest coset representative lying outside every sublattice.

    Raises CoveredByUnion if every representative is covered, in which case
    the union contains the whole lattice.
    """
    if system.m < 1:
        raise ValueError("need at least one sublattice")
    dec = decompose(lattice, system)
    cands = [
        (sup_norm(x), x, i)
        for i, q in enumerate(dec.reps)
        if not dec.system.contains(q)
        for x in [dec.lattice.point(q)]
    ]
    if not cands:
        raise CoveredByUnion("every coset representative lies in some sublattice")
    norm, x, i = min(cands)
    cert = {"one_out": bounds.one_out_bound(dec.det_omega_sq, lattice.rank).admits(norm)}
    return SearchResult(x, norm, coset_index=i, coset_rep=x, certificate=cert)


@dataclass(frozen=True)
class _Coset:
    index: int
    coords: tuple[int, ...]
    rep: tuple[int, ...]
    poly: QuadraticPolynomial
    singular: bool


def _search_coset(cs: _Coset, dec: _Decomposition, q: QuadraticPolynomial, r: int, pinv_b, pinv_a):
    """Zeros on one coset within ambient radius r: (norm, point, index, z') or None."""
    if not cs.singular:
        hits = [
            (sup_norm(x), x, cs.index, zp)
            for zp, x in points_in_box(dec.omega_basis, r, offset=cs.rep, pinv=pinv_b)
            if evaluate(cs.poly, zp) == 0
        ]
        return _best(hits)
    # singular restriction: walk the parent lattice and keep this coset's points
    hits = []
    for u, x in points_in_box(dec.lattice.basis, r, pinv=pinv_a):
        diff = tuple(a - b for a, b in zip(u, cs.coords))
        if member(dec.relation, diff) and evaluate(q, x) == 0:
            zp = tuple(int(v) for v in _coords_on(dec.omega_basis, pinv_b, tuple(a - b for a, b in zip(x, cs.rep))))
            hits.append((sup_norm(x), x, cs.index, zp))
    return _best(hits)


def _coords_on(basis: IntMatrix, pinv, x: Sequence[int]):
    return [sum(p * v for p, v in zip(row, x)) for row in pinv]


def find_avoiding_zero(inst: Instance, radius: int, threads: int = 1) -> SearchResult | None:
    """Minimal zero of Q on the lattice outside every sublattice, within ``radius``.

    Follows the coset decomposition: reduced parent basis, intersection
    sublattice in normal form, representatives outside the union, and the
    restricted polynomial on each surviving coset.  All cosets are searched to
    the same ambient radius before a minimum is declared.  ``threads`` sets the
    worker count; results do not depend on it.
    """
    if not is_regular(inst.poly):
        raise NotRegular("quadratic part is singular")
    if inst.system.m < 1:
        raise ImproperSublattice("the avoiding search needs at least one proper sublattice")
    inst.system.require_proper()
    if radius < 1:
        return None

    dec = decompose(inst.lattice, inst.system)
    cosets = []
    for i, qc in enumerate(dec.reps):
        if dec.system.contains(qc):
            continue
        rep = dec.lattice.point(qc)
        g = restrict(inst.poly, dec.omega_basis, rep)
        singular = det_exact(g.F) == 0
        if singular:
            warnings.warn(
                f"restricted quadratic part on coset {i} is singular; searching it directly",
                RestrictedFormSingular,
                stacklevel=2,
            )
        cosets.append(_Coset(i, qc, rep, g, singular))
    if not cosets:
        return None

    pinv_b = pseudo_inverse(dec.omega_basis)
    pinv_a = pseudo_inverse(dec.lattice.basis)
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for r in _radii(radius):
            task = lambda cs: _search_coset(cs, dec, inst.poly, r, pinv_b, pinv_a)
            found = list(pool.map(task, cosets)) if pool else [task(cs) for cs in cosets]
            best = _best([f for f in found if f is not None])
            if best is not None:
                break
        else:
            return None
    finally:
        if pool:
            pool.shutdown()

    norm, z, idx, zp = best
    cs = next(c for c in cosets if c.index == idx)
    return SearchResult(
        z, norm, coset_index=idx, coset_rep=cs.rep, offset_coords=zp,
        certificate=_certificate(inst, dec, cs, norm, zp),
    )


def _certificate(inst: Instance, dec: _Decomposition, cs: _Coset, norm: int, zp) -> dict:
    k, n = inst.lattice.rank, inst.lattice.ambient_dim
    zp_norm = sup_norm(zp)
    b_max = dec.omega_basis.max_abs()
    c_norm = sup_norm(cs.rep)
    omega_norm = max(sup_norm(c) for c in dec.omega_basis.columns())
    return {
        "triangle": norm <= c_norm + k * b_max * zp_norm,
        "assembly": bounds.assembly_ok(norm, k, dec.det_omega_sq, zp_norm),
        "coset_rep": bounds.coset_norm_ok(c_norm, k, dec.det_omega_sq),
        "omega_basis": bounds.coset_norm_ok(omega_norm, k, dec.det_omega_sq),
        "restricted_height": bounds.restricted_height_bound(k, n, dec.det_omega_sq, height(inst.poly)).admits(height(cs.poly)),
    }


def restricted_polynomials(inst: Instance) -> list[tuple[tuple[int, ...], QuadraticPolynomial]]:
    """(representative, restricted polynomial) for every coset outside the union."""
    dec = decompose(inst.lattice, inst.system)
    out = []
    for qc in dec.reps:
        if dec.system.contains(qc):
            continue
        rep = dec.lattice.point(qc)
        out.append((rep, restrict(inst.poly, dec.omega_basis, rep)))
    return out
