"""JSON instance files.

Example::

    {
      "ambient_dim": 2,
      "lattice_basis": [[1, 0], [0, 1]],
      "sublattices": [[[2, 0], [0, 2]]],
      "quadratic": {"F": [[1, 0], [0, -1]], "L": [0, 0], "t": 0},
      "angle": {"a": [1, 0], "p": 1, "q": 1},
      "search": {"R_max": 10, "constant_C": "1"}
    }

``lattice_basis`` is n x k with the basis vectors as columns (identity when
omitted).  Each entry of ``sublattices`` is a k x k matrix whose rows are
coordinate vectors on that basis.  ``sublattices_ambient`` may be given
instead: n x k matrices whose columns are ambient generators, converted by
exact solving.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .angles import AngleSpec
from .errors import LatzeroError, ParseError, ValidationError
from .intmat import IntMatrix, det_exact
from .lattice import Lattice, SublatticeSystem, sublattice_from_ambient
from .quadratic import QuadraticPolynomial
from .solver import Instance


@dataclass(frozen=True)
class InstanceFile:
    lattice: Lattice
    system: SublatticeSystem
    poly: QuadraticPolynomial | None = None
    angle_base: tuple[int, ...] | None = None
    angle: AngleSpec | None = None
    radius: int | None = None
    constant_C: Fraction | None = None

    @property
    def instance(self) -> Instance:
        if self.poly is None:
            raise ValidationError("quadratic: missing (required for this command)")
        return Instance(self.lattice, self.system, self.poly)


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValidationError(f"{path}: expected an integer, got {value!r}")
    try:
        return int(value)
    except ValueError:
        raise ValidationError(f"{path}: expected an integer, got {value!r}") from None


def _vector(value: Any, path: str, length: int | None = None) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise ValidationError(f"{path}: expected an array")
    if length is not None and len(value) != length:
        raise ValidationError(f"{path}: expected length {length}, got {len(value)}")
    return tuple(_int(v, f"{path}[{i}]") for i, v in enumerate(value))


def _matrix(value: Any, path: str, shape: tuple[int | None, int | None]) -> IntMatrix:
    rows, cols = shape
    if not isinstance(value, list) or not value:
        raise ValidationError(f"{path}: expected a nonempty array of rows")
    if rows is not None and len(value) != rows:
        raise ValidationError(f"{path}: expected {rows} rows, got {len(value)}")
    width = cols if cols is not None else (len(value[0]) if isinstance(value[0], list) else None)
    data = [_vector(r, f"{path}[{i}]", width) for i, r in enumerate(value)]
    return IntMatrix(data)


def _require(doc: dict, key: str):
    if key not in doc:
        raise ValidationError(f"{key}: missing required key")
    return doc[key]


def instance_from_dict(doc: Any) -> InstanceFile:
    if not isinstance(doc, dict):
        raise ValidationError("document root must be an object")
    n = _int(_require(doc, "ambient_dim"), "ambient_dim")
    if n < 1:
        raise ValidationError("ambient_dim: must be positive")
    if "lattice_basis" in doc:
        basis = _matrix(doc["lattice_basis"], "lattice_basis", (n, None))
    else:
        basis = IntMatrix.identity(n)
    try:
        lattice = Lattice(basis)
    except LatzeroError as exc:
        raise ValidationError(f"lattice_basis: {exc}") from None
    k = lattice.rank

    coeffs = []
    for j, m in enumerate(doc.get("sublattices", [])):
        mat = _matrix(m, f"sublattices[{j}]", (k, k))
        if det_exact(mat) == 0:
            raise ValidationError(f"sublattices[{j}]: SingularSublattice (determinant 0)")
        coeffs.append(mat)
    for j, m in enumerate(doc.get("sublattices_ambient", [])):
        mat = _matrix(m, f"sublattices_ambient[{j}]", (n, k))
        try:
            rows = sublattice_from_ambient(lattice, mat.columns())
        except LatzeroError as exc:
            raise ValidationError(f"sublattices_ambient[{j}]: {exc}") from None
        if det_exact(rows) == 0:
            raise ValidationError(f"sublattices_ambient[{j}]: SingularSublattice (determinant 0)")
        coeffs.append(rows)
    system = SublatticeSystem(lattice, tuple(coeffs))

    poly = None
    if "quadratic" in doc:
        qd = doc["quadratic"]
        if not isinstance(qd, dict):
            raise ValidationError("quadratic: expected an object")
        if "F" not in qd:
            raise ValidationError("quadratic.F: missing required key")
        f = _matrix(qd["F"], "quadratic.F", (n, n))
        for i in range(n):
            for j in range(i):
                if f[i, j] != f[j, i]:
                    raise ValidationError(
                        f"quadratic.F: not symmetric, F[{i}][{j}]={f[i, j]} but F[{j}][{i}]={f[j, i]}"
                    )
        lin = _vector(qd.get("L", [0] * n), "quadratic.L", n)
        t = _int(qd.get("t", 0), "quadratic.t")
        poly = QuadraticPolynomial(f, lin, t)

    angle_base = angle = None
    if "angle" in doc:
        ad = doc["angle"]
        if not isinstance(ad, dict):
            raise ValidationError("angle: expected an object")
        if "a" not in ad:
            raise ValidationError("angle.a: missing required key")
        angle_base = _vector(ad["a"], "angle.a", n)
        if ad.get("right", False):
            angle = AngleSpec.right_angle()
        else:
            p, q = _int(ad.get("p"), "angle.p"), _int(ad.get("q"), "angle.q")
            if p <= 0 or q <= 0:
                raise ValidationError("angle: p and q must be positive")
            angle = AngleSpec(p, q)

    radius = constant = None
    if "search" in doc:
        sd = doc["search"]
        if not isinstance(sd, dict):
            raise ValidationError("search: expected an object")
        if "R_max" in sd:
            radius = _int(sd["R_max"], "search.R_max")
            if radius < 0:
                raise ValidationError("search.R_max: must be nonnegative")
        if "constant_C" in sd:
            try:
                constant = Fraction(str(sd["constant_C"]))
            except (ValueError, ZeroDivisionError):
                raise ValidationError(f"search.constant_C: not a rational number: {sd['constant_C']!r}") from None
    return InstanceFile(lattice, system, poly, angle_base, angle, radius, constant)


def instance_to_dict(inst: InstanceFile) -> dict:
    doc: dict = {
        "ambient_dim": inst.lattice.ambient_dim,
        "lattice_basis": inst.lattice.basis.tolist(),
        "sublattices": [m.tolist() for m in inst.system.coeffs],
    }
    if inst.poly is not None:
        doc["quadratic"] = {"F": inst.poly.F.tolist(), "L": list(inst.poly.L), "t": inst.poly.t}
    if inst.angle_base is not None:
        ad: dict = {"a": list(inst.angle_base)}
        if inst.angle.right:
            ad["right"] = True
        else:
            ad.update(p=inst.angle.p, q=inst.angle.q)
        doc["angle"] = ad
    search = {}
    if inst.radius is not None:
        search["R_max"] = inst.radius
    if inst.constant_C is not None:
        c = inst.constant_C
        search["constant_C"] = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    if search:
        doc["search"] = search
    return doc


def loads(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return instance_from_dict(doc)


def dumps(inst: InstanceFile) -> str:
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"


def load_instance_file(path) -> InstanceFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    return loads(text)


def parse_instance(path) -> Instance:
    """Load a file and return the validated lattice/sublattice/polynomial instance."""
    return load_instance_file(path).instance
