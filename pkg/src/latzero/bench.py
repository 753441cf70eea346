"""CSV reports comparing true minimal norms with the explicit bounds.

Rows are deterministic for a fixed configuration; no timings are written.
"""
from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import bounds
from .angles import AngleSpec, find_angle_vector
from .generate import random_lattice, random_poly, random_system
from .lattice import first_minimum_sup, sup_norm
from .quadratic import height
from .solver import (
    Instance,
    bruteforce_avoiding_zero,
    decompose,
    find_avoiding_zero,
    point_outside_union_bruteforce,
)

THEOREM_COLUMNS = [
    "k", "n", "m", "indices", "d", "det_omega_sq", "height_q",
    "true_min", "pipeline_agrees", "outside_min", "lambda1",
    "one_out_bound", "henk_thiel_bound", "main_bound_log10",
    "ratio_outside_one_out", "ratio_outside_henk_thiel", "log10_ratio_true_main",
]

ANGLE_COLUMNS = [
    "a", "p", "q", "n", "norm_sq", "true_norm", "bound", "ratio", "running_max_ratio", "exceeds",
]

RATIO_DIGITS = 12


@dataclass(frozen=True)
class BenchConfig:
    kind: str = "theorem"
    samples: int = 10
    seed: int = 0
    ranks: tuple[int, ...] = (2, 3)
    extra_dim: int = 1
    max_index: int = 4
    max_sublattices: int = 2
    max_height: int = 5
    radius: int = 10
    constant_C: Fraction = Fraction(1)
    angle_dim: int = 5
    angle_entry: int = 2
    angle_pq: int = 3
    threads: int = 1


def _cell(v: bounds.BoundValue) -> str:
    ex = v.exact
    if ex is not None:
        return bounds.frac_str(ex)
    return bounds.decimal_str(v.enclosure()[1])


def _ratio_up(x: int, v: bounds.BoundValue) -> Fraction:
    lo, _ = v.enclosure()
    return bounds.ceil_frac(Fraction(x) / lo, RATIO_DIGITS)


def theorem_row(inst: Instance, radius: int, constant_C=1, threads: int = 1) -> dict:
    lat, system, q = inst.lattice, inst.system, inst.poly
    k, n = lat.rank, lat.ambient_dim
    dec = decompose(lat, system)
    d = dec.relation.det()
    hq = max(height(q), 1)
    lam = first_minimum_sup(dec.lattice, dec.relation)
    one_out = bounds.one_out_bound(dec.det_omega_sq, k)
    ht = bounds.henk_thiel_bound(dec.det_omega_sq, lam, k, system.indices, d)
    main = bounds.theorem_main_bound(dec.det_omega_sq, hq, k, n, constant_C)

    res = find_avoiding_zero(inst, radius, threads=threads)
    ref = bruteforce_avoiding_zero(inst, radius)
    agrees = (res is None and ref is None) or (
        res is not None and ref is not None and res.point == ref.point
    )
    outside = point_outside_union_bruteforce(lat, system, radius)
    row = {
        "k": k, "n": n, "m": system.m,
        "indices": " ".join(map(str, system.indices)),
        "d": d, "det_omega_sq": dec.det_omega_sq, "height_q": height(q),
        "true_min": res.sup_norm if res else "unresolved",
        "pipeline_agrees": int(agrees),
        "outside_min": outside.sup_norm if outside else "unresolved",
        "lambda1": lam,
        "one_out_bound": _cell(one_out),
        "henk_thiel_bound": _cell(ht),
        "main_bound_log10": bounds.decimal_str(main.log10),
        "ratio_outside_one_out": bounds.decimal_str(_ratio_up(outside.sup_norm, one_out)) if outside else "",
        "ratio_outside_henk_thiel": bounds.decimal_str(_ratio_up(outside.sup_norm, ht)) if outside else "",
        "log10_ratio_true_main": "",
    }
    if res is not None:
        lr = Fraction(math.log10(res.sup_norm)) - main.log10
        row["log10_ratio_true_main"] = bounds.decimal_str(bounds.ceil_frac(lr, 6))
    return row


def angle_rows(cases: Iterable[tuple[Sequence[int], int, int]], constant_C=1) -> list[dict]:
    """One row per (a, p, q): smallest vector at the angle versus the radius bound."""
    rows = []
    running = Fraction(0)
    for a, p, q in cases:
        spec = AngleSpec(p, q)
        nsq = sum(x * x for x in a)
        n = len(a)
        bound = bounds.angle_bound(spec.p, spec.q, nsq, n, constant_C)
        cap = math.floor(bound.enclosure()[1])
        b = find_angle_vector(a, spec, cap)
        row = {
            "a": " ".join(map(str, a)), "p": spec.p, "q": spec.q, "n": n, "norm_sq": nsq,
            "true_norm": sup_norm(b) if b is not None else "unresolved",
            "bound": _cell(bound), "ratio": "", "running_max_ratio": "", "exceeds": "",
        }
        if b is not None:
            ratio = _ratio_up(sup_norm(b), bound)
            running = max(running, ratio)
            row["ratio"] = bounds.decimal_str(ratio)
            row["exceeds"] = int(not bound.admits(sup_norm(b)))
        else:
            row["exceeds"] = 1
        row["running_max_ratio"] = bounds.decimal_str(running)
        rows.append(row)
    return rows


def to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def random_theorem_instances(cfg: BenchConfig) -> list[Instance]:
    rng = random.Random(cfg.seed)
    out = []
    for _ in range(cfg.samples):
        k = rng.choice(cfg.ranks)
        n = k + rng.randint(0, cfg.extra_dim)
        lat = random_lattice(rng, n, k, 1)
        system = random_system(rng, lat, rng.randint(1, cfg.max_sublattices), cfg.max_index)
        out.append(Instance(lat, system, random_poly(rng, n, cfg.max_height)))
    return out


def random_angle_cases(cfg: BenchConfig) -> list[tuple[tuple[int, ...], int, int]]:
    rng = random.Random(cfg.seed)
    out = []
    while len(out) < cfg.samples:
        a = tuple(rng.randint(-cfg.angle_entry, cfg.angle_entry) for _ in range(cfg.angle_dim))
        p, q = rng.randint(1, cfg.angle_pq), rng.randint(1, cfg.angle_pq)
        if any(a) and math.gcd(p, q) == 1:
            out.append((a, p, q))
    return out


def bench_report(cfg: BenchConfig) -> str:
    if cfg.kind == "theorem":
        rows = [theorem_row(i, cfg.radius, cfg.constant_C, cfg.threads) for i in random_theorem_instances(cfg)]
        return to_csv(rows, THEOREM_COLUMNS)
    if cfg.kind == "angle":
        return to_csv(angle_rows(random_angle_cases(cfg), cfg.constant_C), ANGLE_COLUMNS)
    raise ValueError(f"unknown bench kind {cfg.kind!r}")
