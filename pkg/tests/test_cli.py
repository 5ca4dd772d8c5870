import json
from pathlib import Path

import pytest

from dihom.cli import EXIT_INPUT, EXIT_INVALID, EXIT_OK, main
from dihom.corpus import corrupted
from dihom.serialize import save_category, write_json

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_validate_ok(capsys):
    code, rep, _ = run(capsys, "validate", "--input", str(DATA / "parallel_pair_homotopy.json"))
    assert code == EXIT_OK
    assert rep["valid"] and rep["schema"] == "validation-report.v1"
    assert rep["category"] == "E2" and rep["truncation"] == 2


@pytest.mark.parametrize("kind", ["face", "unit", "associativity"])
def test_validate_reports_corruption(capsys, tmp_path, kind):
    path = tmp_path / f"{kind}.json"
    save_category(corrupted(kind), path)
    code, rep, _ = run(capsys, "validate", "--input", str(path))
    assert code == EXIT_INVALID and not rep["valid"]


def test_schema_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    write_json({"schema": "enriched-category.v1", "dim": 2, "objects": ["a"]}, bad)
    code, rep, err = run(capsys, "validate", "--input", str(bad))
    assert code == EXIT_INPUT and rep is None and "identities" in err
    write_json({"schema": "something-else"}, bad)
    assert run(capsys, "homology", "--input", str(bad))[0] == EXIT_INPUT
    assert run(capsys, "homology")[0] == EXIT_INPUT


def test_missing_composition_entry_is_schema_error(capsys, tmp_path):
    data = json.loads((DATA / "interval.json").read_text())
    data["composition"][0]["table"].pop()
    path = tmp_path / "holes.json"
    write_json(data, path)
    code, _, err = run(capsys, "validate", "--input", str(path))
    assert code == EXIT_INPUT and "missing entry" in err


def test_homology_report(capsys):
    code, rep, _ = run(capsys, "homology", "--input", str(DATA / "two_homotopies.json"), "--degrees", "0..1")
    assert code == EXIT_OK
    assert rep["schema"] == "homology-report.v1" and rep["ring"] == "z"
    assert [h["description"] for h in rep["homology"]] == ["Z^3", "Z"]
    assert rep["checks"] == {"boundary_squares_to_zero": True, "boundary_equivariant": True}
    assert rep["tool"]["name"] == "dihom"


def test_homology_over_a_field(capsys):
    code, rep, _ = run(capsys, "homology", "--input", str(DATA / "square.json"), "--ring", "fp:3")
    assert code == EXIT_OK and rep["ring"] == "fp:3"
    assert rep["homology"][0]["description"] == "F_3^9"


@pytest.mark.parametrize("args", [["--degrees", "0..2"], ["--degrees", "x"], ["--ring", "fp:4"], ["--dim", "0"]])
def test_bad_options(capsys, args):
    assert run(capsys, "homology", "--input", str(DATA / "square.json"), *args)[0] == EXIT_INPUT


def test_dim_override_for_builders(capsys):
    code, rep, _ = run(capsys, "homology", "--input", str(DATA / "square.json"), "--dim", "3")
    assert code == EXIT_OK and rep["truncation"] == 3 and len(rep["homology"]) == 3
    assert run(capsys, "homology", "--input", str(DATA / "interval.json"), "--dim", "3")[0] == EXIT_INPUT


def test_relative_report_and_determinism(capsys, tmp_path):
    outs = []
    for i in range(2):
        out = tmp_path / f"r{i}.json"
        code = main(["relative", "--input", str(DATA / "square.json"), "--sub", "00,01", "--out", str(out)])
        assert code == EXIT_OK
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    rep = json.loads(outs[0])
    assert rep["subcategory"] == ["00", "01"]
    assert rep["extended_ranks"] == [6, 6, 6]
    assert rep["les"]["exact"] and all(t["injective"] for t in rep["transfer"])


def test_relative_unknown_object(capsys):
    assert run(capsys, "relative", "--input", str(DATA / "square.json"), "--sub", "00,zz")[0] == EXIT_INPUT


def test_algebra_inspect(capsys):
    code, rep, _ = run(capsys, "algebra", "inspect", "--input", str(DATA / "interval.json"))
    assert code == EXIT_OK
    assert rep["associative"] and rep["idempotent"] and rep["s_unital"] and not rep["unital"]
    assert rep["s_unit_witnesses"]["left"] == "id0 + id1"
    assert rep["adjunction"]["samples"] == 20 and rep["adjunction"]["triangle_free"]
    assert rep["unitalization"]["unit"] == "1"


def test_algebra_file_round_trip(capsys, tmp_path):
    code, rep, _ = run(capsys, "algebra", "--input", str(DATA / "interval.json"))
    path = tmp_path / "alg.json"
    write_json(rep["algebra"], path)
    code2, rep2, _ = run(capsys, "algebra", "--input", str(path))
    assert code2 == EXIT_OK and rep2["algebra"] == rep["algebra"]


def test_selftest_subset(capsys):
    code, rep, _ = run(capsys, "selftest", "--subset", "E1,E2@D3")
    assert code == EXIT_OK and rep["passed"]
    assert all(c["passed"] for c in rep["checks"])
    assert {c["name"].split(":")[0] for c in rep["checks"]} == {"E1@D2", "E1@D3", "E2@D3"}


def test_selftest_with_corruption_fails(capsys):
    code, rep, err = run(capsys, "selftest", "--subset", "corrupted-associativity", "--corrupt", "associativity")
    assert code == EXIT_INVALID and not rep["passed"]
    assert rep["first_failure"] == "corrupted-associativity: valid"
    assert "associativity" in err


def test_selftest_unknown_subset(capsys):
    assert run(capsys, "selftest", "--subset", "nope")[0] == EXIT_INPUT
