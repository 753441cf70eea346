"""Seeded randomized self-check run by ``latzero verify``."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable

from . import bounds
from .angles import AngleSpec, angle_form, angle_form_det, angle_form_det_formula, tan_sq
from .errors import CoveredByUnion
from .generate import (
    random_lattice,
    random_poly,
    random_sublattice,
    random_system,
)
from .intmat import IntMatrix, det_exact, hnf_lower, integer_kernel, is_hnf_lower
from .lattice import (
    Lattice,
    coset_representatives,
    first_minimum_sup,
    hermite_certificate,
    intersect_sublattices,
    member,
    reduced_basis,
)
from .quadratic import evaluate, restrict
from .solver import (
    Instance,
    bruteforce_avoiding_zero,
    decompose,
    find_avoiding_zero,
    point_outside_union,
    point_outside_union_bruteforce,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _check_hnf(rng: random.Random, scale: int) -> str:
    for _ in range(20 * scale):
        k = rng.randint(1, 4)
        m = IntMatrix([[rng.randint(-6, 6) for _ in range(k)] for _ in range(k)])
        if det_exact(m) == 0:
            continue
        v, u = hnf_lower(m)
        assert u @ m == v and abs(det_exact(u)) == 1 and is_hnf_lower(v), m
        assert hnf_lower(v)[0] == v, v
    return ""


def _check_kernel(rng: random.Random, scale: int) -> str:
    for _ in range(5 * scale):
        c = rng.randint(2, 3)
        m = IntMatrix([[rng.randint(-3, 3) for _ in range(c)]])
        ker = integer_kernel(m)
        for x in itertools.product(range(-3, 4), repeat=c):
            in_span = any(
                all(sum(a * r[j] for a, r in zip(coef, ker.rows)) == x[j] for j in range(c))
                for coef in itertools.product(range(-6, 7), repeat=ker.nrows)
            )
            if (m @ x == (0,)) and not in_span:
                raise AssertionError(f"kernel of {m} misses {x}")
            if in_span and m @ x != (0,):
                raise AssertionError(f"kernel of {m} contains {x}")
    return ""


def _check_cosets(rng: random.Random, scale: int) -> str:
    for _ in range(10 * scale):
        k = rng.randint(2, 3)
        v = hnf_lower(random_sublattice(rng, k, 20))[0]
        dec = coset_representatives(v)
        assert dec.index == det_exact(v) == len(dec.reps)
        for u in itertools.product(range(-2, 3), repeat=k):
            hits = [r for r in dec.reps if member(v, [a - b for a, b in zip(u, r)])]
            assert len(hits) == 1, (v, u, hits)
    return ""


def _check_intersection(rng: random.Random, scale: int) -> str:
    for _ in range(10 * scale):
        k = 2
        lat = Lattice.standard(k)
        system = random_system(rng, lat, 2, 6)
        v = intersect_sublattices(system)
        for u in itertools.product(range(-6, 7), repeat=k):
            assert member(v, u) == all(member(c, u) for c in system.coeffs), (system, u)
    return ""


def _check_outside(rng: random.Random, scale: int) -> str:
    seen = 0
    while seen < 10 * scale:
        k = rng.randint(2, 3)
        lat = random_lattice(rng, k, k, 1)
        system = random_system(rng, lat, rng.randint(1, 3), 4)
        try:
            res = point_outside_union(lat, system)
        except CoveredByUnion:
            continue
        seen += 1
        dec = decompose(lat, system)
        assert bounds.one_out_bound(dec.det_omega_sq, k).admits(res.sup_norm)
        ref = point_outside_union_bruteforce(lat, system, res.sup_norm)
        lam = first_minimum_sup(dec.lattice, dec.relation)
        ht = bounds.henk_thiel_bound(dec.det_omega_sq, lam, k, system.indices, det_exact(dec.relation))
        assert ht.admits(ref.sup_norm, strict=True), (system, ref)
    return ""


def _check_pipeline(rng: random.Random, scale: int) -> str:
    agreed = 0
    while agreed < 3 * scale:
        k = rng.randint(2, 3)
        lat = random_lattice(rng, k + 1, k, 1)
        system = random_system(rng, lat, rng.randint(1, 2), 4)
        inst = Instance(lat, system, random_poly(rng, k + 1, 4))
        ref = bruteforce_avoiding_zero(inst, 8)
        if ref is None:
            continue
        got = find_avoiding_zero(inst, 8)
        assert got is not None and got.point == ref.point, (inst, ref, got)
        assert all(got.certificate.values()), got.certificate
        agreed += 1
    return ""


def _check_restriction(rng: random.Random, scale: int) -> str:
    for _ in range(50 * scale):
        n = rng.randint(2, 4)
        k = rng.randint(1, n)
        q = random_poly(rng, n, 5, regular=False)
        b = random_lattice(rng, n, k, 3).basis
        c = [rng.randint(-5, 5) for _ in range(n)]
        g = restrict(q, b, c)
        x = [rng.randint(-5, 5) for _ in range(k)]
        assert evaluate(g, x) == evaluate(q, [ci + bi for ci, bi in zip(c, b @ x)])
    return ""


def _check_angles(rng: random.Random, scale: int) -> str:
    for _ in range(20 * scale):
        n = rng.choice((5, 6))
        a = [rng.randint(-4, 4) for _ in range(n)]
        b = [rng.randint(-4, 4) for _ in range(n)]
        if not any(a) or not any(b) or sum(x * y for x, y in zip(a, b)) == 0:
            continue
        ts = tan_sq(a, b)
        if ts == 0:
            continue
        spec = AngleSpec.from_tan_sq(ts)
        assert evaluate(angle_form(a, spec).form, b) == 0
        assert angle_form_det(a, spec) == angle_form_det_formula(a, spec)
    return ""


def _check_reduction(rng: random.Random, scale: int) -> str:
    for _ in range(10 * scale):
        k = rng.randint(2, 4)
        lat = random_lattice(rng, k + rng.randint(0, 1), k, 4)
        assert hermite_certificate(reduced_basis(lat))
    return ""


CHECKS: list[tuple[str, Callable[[random.Random, int], str]]] = [
    ("hnf_lower normal form and unimodularity", _check_hnf),
    ("integer_kernel completeness on boxes", _check_kernel),
    ("coset representatives complete and distinct", _check_cosets),
    ("intersection membership oracle", _check_intersection),
    ("reduced basis Hermite certificate", _check_reduction),
    ("point outside union: both explicit bounds", _check_outside),
    ("avoiding-zero pipeline matches brute force", _check_pipeline),
    ("restriction identity", _check_restriction),
    ("angle form zero and determinant identity", _check_angles),
]


def run_suite(seed: int = 0, scale: int = 1) -> list[CheckResult]:
    out = []
    for i, (name, fn) in enumerate(CHECKS):
        rng = random.Random(f"{seed}:{i}")
        try:
            out.append(CheckResult(name, True, fn(rng, scale)))
        except AssertionError as exc:
            out.append(CheckResult(name, False, f"counterexample: {exc}"))
    return out
