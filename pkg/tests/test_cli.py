import io
import json
import random

import pytest

from latzero.bench import ANGLE_COLUMNS, THEOREM_COLUMNS, BenchConfig, bench_report, theorem_row
from latzero.cli import run_command
from latzero.errors import ParseError, ValidationError
from latzero.files import InstanceFile, dumps, instance_from_dict, loads, parse_instance
from latzero.generate import random_lattice, random_poly, random_system
from latzero.solver import Instance

EX1 = {
    "ambient_dim": 2,
    "sublattices": [[[2, 0], [0, 2]]],
    "quadratic": {"F": [[1, 0], [0, -1]], "L": [0, 0], "t": 0},
}
PARITY = dict(EX1, sublattices=[[[1, 1], [0, 2]]])


def write(tmp_path, doc, name="inst.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_minimal(tmp_path):
    inst = parse_instance(write(tmp_path, EX1))
    assert inst.lattice.rank == 2 and inst.system.indices == (4,)


def test_parse_rejects_asymmetric():
    doc = dict(EX1, quadratic={"F": [[1, 2], [3, 1]]})
    with pytest.raises(ValidationError, match=r"quadratic\.F.*F\[1\]\[0\]=3.*F\[0\]\[1\]=2"):
        instance_from_dict(doc)


def test_parse_rejects_singular_sublattice():
    with pytest.raises(ValidationError, match=r"sublattices\[0\]: SingularSublattice"):
        instance_from_dict(dict(EX1, sublattices=[[[1, 2], [2, 4]]]))


def test_parse_reports_shape_path():
    with pytest.raises(ValidationError, match=r"sublattices\[0\]\[1\]"):
        instance_from_dict(dict(EX1, sublattices=[[[2, 0], [0]]]))
    with pytest.raises(ValidationError, match="ambient_dim"):
        instance_from_dict({"sublattices": []})


def test_parse_malformed_json_has_position():
    with pytest.raises(ParseError, match=r"line 2, column"):
        loads('{"ambient_dim": 2,\n "x": }')


def test_ambient_sublattice_form():
    doc = {"ambient_dim": 2, "lattice_basis": [[1, 0], [1, 1]], "sublattices_ambient": [[[2, 0], [2, 2]]]}
    f = instance_from_dict(doc)
    assert f.system.coeffs[0].tolist() == [[2, 0], [0, 2]]


def test_round_trip():
    rng = random.Random(8)
    for _ in range(20):
        lat = random_lattice(rng, 3, 2, 2)
        f = InstanceFile(lat, random_system(rng, lat, 2, 5), random_poly(rng, 3, 5), radius=7)
        assert loads(dumps(f)) == f


def test_avoid_zero_found(tmp_path):
    code, out, _ = run("avoid-zero", write(tmp_path, EX1), "--radius", "3", "--format", "machine")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["point"] == [-1, -1]
    assert doc["result"]["sup_norm"] == 1


def test_avoid_zero_absent_exits_one(tmp_path):
    code, out, err = run("avoid-zero", write(tmp_path, PARITY), "--radius", "5")
    assert code == 1
    assert "no avoiding zero with |z| ≤ 5" in err


def test_validation_error_exits_two(tmp_path):
    bad = dict(EX1, quadratic={"F": [[1, 2], [3, 1]]})
    code, _, err = run("avoid-zero", write(tmp_path, bad))
    assert code == 2
    assert "usage:" in err


def test_usage_error_exits_two(capsys):
    assert run_command(["frobnicate"]) == 2
    assert "usage:" in capsys.readouterr().err
    assert run_command(["avoid-zero", "x.json", "--radius", "-1"]) == 2


def test_verify_passes():
    code, out, _ = run("verify", "--seed", "7", "--format", "machine")
    assert code == 0
    assert all(c["passed"] for c in json.loads(out)["checks"])


def test_other_commands(tmp_path):
    path = write(tmp_path, dict(EX1, angle={"a": [1, 0], "p": 1, "q": 1}))
    for cmd in ("intersect", "cosets", "outside-point", "find-zero", "bounds", "angle-form", "angle-find"):
        code, out, err = run(cmd, path, "--format", "machine")
        assert code == 0, (cmd, err)
        assert json.loads(out)["command"] == cmd
    code, out, _ = run("hnf", "[[0,3],[2,0]]", "--format", "machine")
    assert json.loads(out)["matrices"][0]["normal_form"] == [[2, 0], [0, 3]]
    code, out, _ = run("bounds", path, "--format", "machine")
    names = {b["name"]: b for b in json.loads(out)["bounds"]}
    assert names["henk_thiel"]["exact"] == "5/2"
    assert names["theorem_main"]["rounding"] == "up"


def test_outside_point_covered_exits_one(tmp_path):
    doc = {"ambient_dim": 2, "sublattices": [[[2, 0], [0, 1]], [[1, 0], [0, 2]], [[1, 1], [0, 2]]]}
    code, _, _ = run("outside-point", write(tmp_path, doc))
    assert code == 1


def test_timing_only_when_requested(tmp_path):
    path = write(tmp_path, EX1)
    _, out, _ = run("avoid-zero", path, "--format", "machine")
    assert "timing_seconds" not in json.loads(out)
    _, out, _ = run("avoid-zero", path, "--format", "machine", "--timing")
    assert "timing_seconds" in json.loads(out)


def test_bench_header_only():
    assert bench_report(BenchConfig(samples=0)) == ",".join(THEOREM_COLUMNS) + "\n"
    assert bench_report(BenchConfig(kind="angle", samples=0)) == ",".join(ANGLE_COLUMNS) + "\n"


def test_bench_deterministic():
    cfg = BenchConfig(samples=4, seed=3)
    assert bench_report(cfg) == bench_report(cfg)
    code, a, _ = run("bench", "--samples", "3", "--seed", "5", "--threads", "1")
    code, b, _ = run("bench", "--samples", "3", "--seed", "5", "--threads", "3")
    assert code == 0 and a == b


def test_bench_worked_instance_row():
    f = instance_from_dict(EX1)
    row = theorem_row(Instance(f.lattice, f.system, f.poly), 5)
    assert row["true_min"] == 1
    assert row["henk_thiel_bound"] == "5/2"
    assert row["outside_min"] == 1
