import json
import subprocess
import sys

import pytest

from bredon.abelian import FgAbelianGroup
from bredon.cli import SCHEMA, decode_answer, emit, main, parse_report
from bredon.mackey import MackeyExpr, concretize, constant_z
from bredon.repring import GroupSpec, fixed_dims, parse_grading
from bredon.zcoeff import z_expr


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "coeff, alpha, summary",
    [
        ("Z", "xi^1 + xi^3 - 2", "Z/15; K[3]<Z/3> (+) K[5]<Z/5>"),
        ("A", "xi^1", "Z^3; Mackey: representation-dependent"),
        ("Z", "0", "Z; const Z"),
        ("A:1", "xi^3 + xi^5 - 2", "Z (+) Z/5; K[3]<Z> (+) K[5]<Z/5>"),
        ("A:1", "xi^5 - 2", "Z; Mackey: representation-dependent"),
    ],
)
def test_cohomology_examples(capsys, coeff, alpha, summary):
    code, out, _ = run(capsys, "cohomology", "--n", "15", "--coeff", coeff, "--alpha", alpha)
    assert code == 0
    assert f"  {summary}" in out.splitlines()


def test_cohomology_with_oracle_and_range(capsys):
    code, out, _ = run(capsys, "cohomology", "--n", "15", "--sphere", "xi + xi^3", "--degrees", "0:5", "--oracle", "--format", "json")
    assert code == 0
    rep = parse_report(out)
    assert [e["oracle"] for e in rep["results"]] == ["MATCH"] * 6
    assert rep["results"][4]["summary"] == "Z; const Z"


def test_cohomology_unreachable_grading(capsys):
    code, out, _ = run(capsys, "cohomology", "--n", "15", "--alpha", "xi - xi^3", "--oracle")
    assert code == 0 and "oracle: UNREACHABLE" in out


def test_custom_coefficient_file(tmp_path, capsys):
    f = tmp_path / "z.json"
    f.write_text(concretize(constant_z(15)).to_text())
    code, out, _ = run(capsys, "cohomology", "--n", "15", "--coeff-file", str(f), "--alpha", "xi + xi^3 - 2", "--format", "json")
    assert code == 0
    e = parse_report(out)["results"][0]
    assert e["levels"] == {"1": "0", "3": "Z/3", "5": "Z/5", "15": "Z/15"}
    code, _, err = run(capsys, "cohomology", "--n", "21", "--coeff-file", str(f), "--alpha", "0")
    assert code == 1 and "C_15" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["cohomology", "--n", "15", "--alpha", "xi^^2"],
        ["cohomology", "--n", "12", "--alpha", "0"],
        ["cohomology", "--n", "15"],
        ["cohomology", "--n", "15", "--coeff", "B", "--alpha", "0"],
        ["cohomology", "--n", "15", "--coeff", "A:9", "--alpha", "0"],
        ["ring", "--n", "15", "mul", "a(1)"],
        ["ring", "--n", "15", "add", "a(1)", "a(3)"],
        ["ring", "--n", "15", "class", "a(1) u(3)^-1"],
        ["ring", "--n", "15", "class", "b(1)"],
        ["freeness", "grassmann", "--n", "15", "--m", "2"],
        ["bogus"],
        [],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err


def test_parse_error_reports_column(capsys):
    code, _, err = run(capsys, "cohomology", "--n", "15", "--alpha", "xi + 3*")
    assert code == 1 and "column" in err


def test_ring_commands(capsys):
    assert run(capsys, "ring", "--n", "15", "mul", "a(1)", "a(1)")[1].strip() == "grading 2*xi^1: Z/15, value 1"
    _, x, _ = run(capsys, "ring", "--n", "15", "mul", "u(3)", "a(1)")
    _, y, _ = run(capsys, "ring", "--n", "15", "mul", "u(1)", "a(3)")
    assert x.strip().endswith("value 1") and y.strip().endswith("value 3")
    _, z, _ = run(capsys, "ring", "--n", "15", "mul", "a(1)", "1 @ xi^3 + 1")
    assert z.strip().endswith("0 (group vanishes)")
    _, s, _ = run(capsys, "ring", "--n", "15", "add", "a(1) u(3)", "2 @ xi + xi^3 - 2")
    assert s.strip().endswith("value 3")
    code, r, _ = run(capsys, "ring", "--n", "15", "relations")
    assert code == 0 and r.endswith("0 violations\n")


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", "--n", "15", "--max-factors", "2", "--coeff", "Z")
    assert code == 0
    assert out.strip() == "400 comparisons, 0 mismatches"


def test_properties_command(capsys):
    code, out, _ = run(capsys, "properties", "--n", "15", "--samples", "200", "--seed", "3")
    assert code == 0 and out.strip() == "200 gradings checked, 0 failures"


def test_freeness_commands(capsys):
    code, out, _ = run(capsys, "freeness", "cp", "--n", "15", "--m", "10")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 1 + 11 + 1
    assert lines[-1] == "even type: yes; free generators: 11"
    code, out, _ = run(capsys, "freeness", "grassmann", "--n", "15", "--l", "4", "--m", "2", "--format", "json")
    rep = parse_report(out)
    assert code == 0 and len(rep["rows"]) == 6 and rep["generators"] == 6
    assert {r["cell"] for r in rep["rows"] if r["mismatch"]} == {"(1,2)", "(2,2)"}


def test_mismatch_exit_code(monkeypatch, capsys):
    import bredon.cli as cli

    monkeypatch.setattr(cli, "a_group", lambda fd, I: FgAbelianGroup.cyclic(7))
    code, out, _ = run(capsys, "cohomology", "--n", "15", "--alpha", "0", "--oracle")
    assert code == 2 and "MISMATCH" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["cohomology", "--n", "15", "--coeff", "A", "--alpha", "xi + xi^3 - 2", "--alpha", "xi", "--format", "json"],
        ["ring", "--n", "105", "relations", "--seed", "4", "--format", "json"],
        ["properties", "--n", "21", "--samples", "100", "--seed", "9", "--format", "json"],
        ["freeness", "cp", "--n", "15", "--m", "4", "--format", "json"],
        ["oracle", "--n", "15", "--max-factors", "1", "--coeff", "A", "--format", "json"],
    ],
)
def test_json_round_trip_and_determinism(capsys, argv):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    rep = parse_report(first)
    assert rep["schema"] == SCHEMA
    assert emit(rep) == first.rstrip("\n")


def test_decode_answer():
    entry = {"group": "Z/15", "mackey": z_expr(fixed_dims(parse_grading("xi + xi^3 - 2", GroupSpec(15)))).to_json()}
    grp, expr = decode_answer(entry, 15)
    assert str(grp) == "Z/15" and isinstance(expr, MackeyExpr)
    assert decode_answer({"group": "Z^3", "mackey": None}, 15)[1] is None


def test_parse_report_rejects_other_schema():
    with pytest.raises(ValueError):
        parse_report(json.dumps({"schema": "other/9"}))


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "bredon", "cohomology", "--n", "15", "--alpha", "0"], capture_output=True, text=True)
    assert res.returncode == 0 and "Z; const Z" in res.stdout
