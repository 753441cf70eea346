"""Command-line front end.

Exit status: 0 on success, 1 when no result exists within the search radius
(or a verify check fails), 2 on malformed input or usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings
from fractions import Fraction
from typing import Any, Sequence

from . import bounds
from .angles import (
    AngleSpec,
    angle_form,
    angle_form_det,
    find_angle_vector,
    find_angle_vector_avoiding,
    right_angle_vector,
)
from .bench import BenchConfig, bench_report
from .errors import CoveredByUnion, LatzeroError, RestrictedFormSingular
from .files import InstanceFile, load_instance_file
from .intmat import IntMatrix, det_exact, hnf_lower
from .lattice import (
    Lattice,
    SublatticeSystem,
    coset_representatives,
    first_minimum_sup,
    intersect_sublattices,
)
from .quadratic import height
from .solver import (
    Instance,
    SearchResult,
    bruteforce_avoiding_zero,
    decompose,
    find_avoiding_zero,
    minimal_zero_in_box,
    point_outside_union,
)
from .verify import run_suite

DEFAULT_RADIUS = 10
# optional cap on --threads
THREADS_ENV = "LATZERO_MAX_THREADS"


class NoResult(Exception):
    """Search exhausted without finding anything; carries the partial document."""

    def __init__(self, message: str, doc: dict):
        super().__init__(message)
        self.doc = doc


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("constant must be positive")
    return value


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _positive(text: str) -> int:
    value = _nonneg(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def _threads(requested: int) -> int:
    cap = os.environ.get(THREADS_ENV)
    if cap and cap.isdigit() and int(cap) >= 1:
        return min(requested, int(cap))
    return requested


def _vec(x: Sequence[int] | None):
    return None if x is None else [int(v) for v in x]


def _result_doc(res: SearchResult) -> dict:
    doc: dict[str, Any] = {"point": _vec(res.point), "sup_norm": res.sup_norm}
    if res.coset_index is not None:
        doc["coset_index"] = res.coset_index
    if res.coset_rep is not None:
        doc["coset_rep"] = _vec(res.coset_rep)
    if res.offset_coords is not None:
        doc["offset_coords"] = _vec(res.offset_coords)
    if res.certificate:
        doc["certificate"] = dict(sorted(res.certificate.items()))
    return doc


# --- commands ---------------------------------------------------------------


def _load(args) -> InstanceFile:
    return load_instance_file(args.file)


def _radius(args, inst: InstanceFile | None = None) -> int:
    if args.radius is not None:
        return args.radius
    if inst is not None and inst.radius is not None:
        return inst.radius
    return DEFAULT_RADIUS


def _constant(args, inst: InstanceFile | None = None) -> Fraction:
    if args.constant is not None:
        return args.constant
    if inst is not None and inst.constant_C is not None:
        return inst.constant_C
    return Fraction(1)


def cmd_hnf(args) -> dict:
    source = args.source.strip()
    if source.startswith("["):
        try:
            rows = json.loads(source)
        except json.JSONDecodeError as exc:
            raise LatzeroError(f"matrix: {exc.msg}") from None
        mats = [IntMatrix(rows)]
    else:
        mats = list(load_instance_file(source).system.coeffs)
    out = []
    for m in mats:
        v, u = hnf_lower(m)
        out.append({"input": m.tolist(), "normal_form": v.tolist(), "transform": u.tolist(), "index": abs(det_exact(m))})
    return {"matrices": out}


def cmd_intersect(args) -> dict:
    inst = _load(args)
    v = intersect_sublattices(inst.system)
    return {"relation": v.tolist(), "index": det_exact(v), "indices": list(inst.system.indices)}


def cmd_cosets(args) -> dict:
    inst = _load(args)
    v = intersect_sublattices(inst.system)
    dec = coset_representatives(v)
    reps = [
        {"coords": list(r), "point": _vec(inst.lattice.point(r)), "outside_union": not inst.system.contains(r)}
        for r in dec.reps
    ]
    return {"relation": v.tolist(), "index": dec.index, "representatives": reps}


def cmd_outside_point(args) -> dict:
    inst = _load(args)
    dec = decompose(inst.lattice, inst.system)
    bound = bounds.one_out_bound(dec.det_omega_sq, inst.lattice.rank)
    try:
        res = point_outside_union(inst.lattice, inst.system)
    except CoveredByUnion as exc:
        raise NoResult(f"sublattices cover the lattice: {exc}", {"det_omega_sq": dec.det_omega_sq}) from None
    return {"result": _result_doc(res), "det_omega_sq": dec.det_omega_sq, "bounds": [bound.to_json()]}


def cmd_find_zero(args) -> dict:
    inst = _load(args)
    q = inst.instance.poly
    r = _radius(args, inst)
    if inst.lattice == Lattice.standard(inst.lattice.ambient_dim):
        z = minimal_zero_in_box(q, r)
        res = None if z is None else SearchResult(tuple(z), max((abs(v) for v in z), default=0))
    else:
        empty = SublatticeSystem(inst.lattice, ())
        res = bruteforce_avoiding_zero(Instance(inst.lattice, empty, q), r)
    doc = {"radius": r, "height_q": height(q)}
    if res is None:
        raise NoResult(f"no zero with |z| ≤ {r}", doc)
    doc["result"] = _result_doc(res)
    return doc


def cmd_avoid_zero(args) -> dict:
    inst = _load(args)
    r = _radius(args, inst)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RestrictedFormSingular)
        res = find_avoiding_zero(inst.instance, r, threads=_threads(args.threads))
    doc: dict[str, Any] = {"radius": r}
    notes = [str(w.message) for w in caught if issubclass(w.category, RestrictedFormSingular)]
    if notes:
        doc["warnings"] = notes
    if res is None:
        doc["detail"] = "unresolved below theoretical bound"
        raise NoResult(f"no avoiding zero with |z| ≤ {r}", doc)
    doc["result"] = _result_doc(res)
    return doc


def cmd_bounds(args) -> dict:
    inst = _load(args)
    c = _constant(args, inst)
    k, n = inst.lattice.rank, inst.lattice.ambient_dim
    out: list[dict] = []
    doc: dict[str, Any] = {"k": k, "n": n}
    if inst.system.m:
        dec = decompose(inst.lattice, inst.system)
        d = det_exact(dec.relation)
        lam = first_minimum_sup(dec.lattice, dec.relation)
        doc.update(det_omega_sq=dec.det_omega_sq, d=d, lambda1=lam)
        out.append(bounds.one_out_bound(dec.det_omega_sq, k).to_json())
        out.append(bounds.henk_thiel_bound(dec.det_omega_sq, lam, k, inst.system.indices, d).to_json())
        if inst.poly is not None and height(inst.poly) >= 1:
            h = height(inst.poly)
            doc["height_q"] = h
            out.append(bounds.theorem_main_bound(dec.det_omega_sq, h, k, n, c).to_json())
            out.append(bounds.restricted_height_bound(k, n, dec.det_omega_sq, h).to_json())
    if inst.poly is not None and height(inst.poly) >= 1:
        h = height(inst.poly)
        doc["height_q"] = h
        out.append(bounds.kornhauser_radius(h).to_json())
        if n >= 2:
            out.append(bounds.cassels_bound(h, n, c).to_json())
    if inst.angle is not None and not inst.angle.right:
        nsq = sum(v * v for v in inst.angle_base)
        out.append(bounds.angle_bound(inst.angle.p, inst.angle.q, nsq, n, c).to_json())
    if k >= 3:
        doc["rho"] = bounds.frac_str(bounds.rho(k))
    doc["bounds"] = out
    return doc


def _angle_input(args) -> tuple[tuple[int, ...], AngleSpec, InstanceFile | None]:
    inst = load_instance_file(args.file) if args.file else None
    if args.a is not None:
        a = args.a
    elif inst is not None and inst.angle_base is not None:
        a = inst.angle_base
    else:
        raise LatzeroError("angle: give --a or an instance file with an angle section")
    if args.right:
        spec = AngleSpec.right_angle()
    elif args.p is not None or args.q is not None:
        spec = AngleSpec(args.p or 1, args.q or 1)
    elif inst is not None and inst.angle is not None:
        spec = inst.angle
    else:
        spec = AngleSpec(1, 1)
    return tuple(a), spec, inst


def cmd_angle_form(args) -> dict:
    a, spec, _ = _angle_input(args)
    if spec.right:
        raise LatzeroError("angle-form: a right angle has no quadratic form; use angle-find")
    af = angle_form(a, spec)
    return {
        "a": list(a), "p": spec.p, "q": spec.q, "t": af.t,
        "form": af.form.F.tolist(), "height": height(af.form),
        "det": angle_form_det(a, spec), "guaranteed": af.guaranteed,
    }


def cmd_angle_find(args) -> dict:
    a, spec, inst = _angle_input(args)
    r = _radius(args, inst)
    system = None
    if args.avoid:
        if inst is None:
            raise LatzeroError("angle-find --avoid needs an instance file with sublattices")
        system = inst.system
    doc: dict[str, Any] = {"a": list(a), "radius": r}
    if spec.right:
        doc["right"] = True
        b = right_angle_vector(a, r, system)
    else:
        doc.update(p=spec.p, q=spec.q)
        nsq = sum(v * v for v in a)
        doc["bounds"] = [bounds.angle_bound(spec.p, spec.q, nsq, len(a), _constant(args, inst)).to_json()]
        if system is not None:
            b = find_angle_vector_avoiding(a, spec, system, r, threads=_threads(args.threads))
        else:
            b = find_angle_vector(a, spec, r, orientation=args.orientation)
    if b is None:
        raise NoResult(f"no vector at the requested angle with |b| ≤ {r}", doc)
    doc["result"] = {"point": _vec(b), "sup_norm": max(abs(v) for v in b)}
    return doc


def cmd_verify(args) -> dict:
    results = run_suite(args.seed, args.scale)
    doc = {
        "seed": args.seed,
        "checks": [{"name": c.name, "passed": c.passed, **({"detail": c.detail} if c.detail else {})} for c in results],
    }
    if not all(c.passed for c in results):
        raise NoResult("verification failed", doc)
    return doc


def cmd_bench(args) -> str:
    cfg = BenchConfig(
        kind=args.kind,
        samples=args.samples,
        seed=args.seed,
        ranks=args.ranks,
        max_index=args.max_index,
        max_height=args.max_height,
        radius=args.radius if args.radius is not None else DEFAULT_RADIUS,
        constant_C=args.constant if args.constant is not None else Fraction(1),
        threads=_threads(args.threads),
    )
    return bench_report(cfg)


# --- output -----------------------------------------------------------------


def _human(doc: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for key in sorted(doc):
            val = doc[key]
            if isinstance(val, (dict, list)) and val and not _flat(val):
                lines.append(f"{pad}{key}:")
                lines.extend(_human(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_inline(val)}")
    elif isinstance(doc, list):
        for item in doc:
            if isinstance(item, dict):
                sub = _human(item, indent + 1)
                lines.append(f"{pad}- " + sub[0].lstrip())
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_inline(item)}")
    return lines


def _flat(val) -> bool:
    if isinstance(val, list):
        return all(isinstance(v, (int, str, bool)) or (isinstance(v, list) and _flat(v)) for v in val)
    return False


def _inline(val) -> str:
    if isinstance(val, list):
        return "(" + ", ".join(_inline(v) for v in val) + ")"
    if isinstance(val, bool):
        return "yes" if val else "no"
    return str(val)


def _emit(doc: dict, fmt: str, out) -> None:
    if fmt == "machine":
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write("\n".join(_human(doc)) + "\n")


COMMANDS = {
    "hnf": cmd_hnf,
    "intersect": cmd_intersect,
    "cosets": cmd_cosets,
    "outside-point": cmd_outside_point,
    "find-zero": cmd_find_zero,
    "avoid-zero": cmd_avoid_zero,
    "bounds": cmd_bounds,
    "angle-form": cmd_angle_form,
    "angle-find": cmd_angle_find,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--radius", type=_nonneg, help="search radius (sup-norm)")
    common.add_argument("--constant", type=_fraction, help="implied constant C (rational, default 1)")
    common.add_argument("--seed", type=int, default=0, help="seed for verify and bench")
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--threads", type=_positive, default=1, help="worker count; results do not depend on it")
    common.add_argument("--timing", action="store_true", help="add wall-clock seconds to the output")

    parser = argparse.ArgumentParser(prog="latzero", description="Small zeros of quadratic polynomials avoiding sublattices.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("hnf", parents=[common], help="normal form of a matrix or of each sublattice in a file")
    p.add_argument("source", help="JSON matrix literal such as '[[2,1],[0,3]]', or an instance file")
    for name, text in (
        ("intersect", "relation matrix of the intersection"),
        ("cosets", "coset representatives of the intersection"),
        ("outside-point", "shortest coset representative outside the union"),
        ("find-zero", "minimal nontrivial zero of Q on the lattice"),
        ("avoid-zero", "minimal zero of Q outside every sublattice"),
        ("bounds", "explicit bounds for an instance"),
    ):
        sub.add_parser(name, parents=[common], help=text).add_argument("file")
    for name, text in (("angle-form", "quadratic form of an angle"), ("angle-find", "shortest vector at an angle")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file", nargs="?")
        p.add_argument("--a", type=_int_list, help="base vector, e.g. '1,1,0,0,0'")
        p.add_argument("--p", type=_positive)
        p.add_argument("--q", type=_positive)
        p.add_argument("--right", action="store_true", help="right angle")
        if name == "angle-find":
            p.add_argument("--orientation", choices=("any", "acute_side"), default="any")
            p.add_argument("--avoid", action="store_true", help="avoid the file's sublattices")
    p = sub.add_parser("verify", parents=[common], help="seeded randomized self-check")
    p.add_argument("--scale", type=_positive, default=1, help="multiplier on case counts")
    p = sub.add_parser("bench", parents=[common], help="CSV of true minima against the bounds")
    p.add_argument("--kind", choices=("theorem", "angle"), default="theorem")
    p.add_argument("--samples", type=_nonneg, default=10)
    p.add_argument("--ranks", type=_int_list, default=(2, 3))
    p.add_argument("--max-index", type=_positive, default=4)
    p.add_argument("--max-height", type=_positive, default=5)
    return parser


def run_command(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        doc = COMMANDS[args.command](args)
    except NoResult as exc:
        doc = {"command": args.command, "status": "no_result", "message": str(exc), **exc.doc}
        _emit(doc, args.format, out)
        err.write(f"latzero: {exc}\n")
        return 1
    except (LatzeroError, ValueError) as exc:
        err.write(f"latzero {args.command}: error: {exc}\n")
        err.write(parser.format_usage())
        return 2
    if isinstance(doc, str):
        out.write(doc)
        return 0
    doc = {"command": args.command, "status": "ok", **doc}
    if args.timing:
        doc["timing_seconds"] = round(time.perf_counter() - start, 6)
    _emit(doc, args.format, out)
    return 0


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
