import json
from pathlib import Path

import pytest

from superjordan.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from superjordan.config import SCHEMA_VERSION

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), err


def test_describe_trivial_extension(capsys):
    code, rep, _ = run_json(capsys, "describe", CONFIGS / "trivial_z2.json")
    assert code == EXIT_OK
    assert rep["schema_version"] == SCHEMA_VERSION
    assert (rep["order"], rep["even_part"], rep["odd_part"]) == (4, 2, 2)
    assert rep["module"]["two_torsion"] is True


def test_describe_triangular(capsys):
    code, rep, _ = run_json(capsys, "describe", CONFIGS / "triangular_z3.json")
    assert code == EXIT_OK
    assert rep["order"] == 27
    assert rep["two_torsion_free"] is True
    assert rep["triangular"]["faithful"] == [True, True]


def test_describe_text(capsys):
    code, out, _ = run(capsys, "describe", CONFIGS / "trivial_z2.json")
    assert code == EXIT_OK
    assert "|A0|=2  |A1|=2" in out
    assert "2-torsion: yes" in out


def test_malformed_config(capsys):
    code, _, err = run(capsys, "describe", CONFIGS / "malformed.json")
    assert code == EXIT_INPUT
    assert "ring.module.m: missing" in err


def test_verify_zero_even_superderivation(capsys):
    code, rep, _ = run_json(capsys, "verify", CONFIGS / "trivial_z2.json", "zero", "--axiom", "jordan-superderivation-deg0")
    assert code == EXIT_OK
    assert rep["passed"] is True


def test_verify_identity_on_z3_fails_with_witness(capsys):
    code, rep, _ = run_json(capsys, "verify", CONFIGS / "identity_z3.json", "identity", "--axiom", "derivation")
    assert code == EXIT_FAIL
    assert rep["witness"] == [[1], [1]]


def test_verify_inner_e12(capsys):
    code, rep, _ = run_json(capsys, "verify", CONFIGS / "upper_t2_z2.json", "inner_e12", "--axiom", "derivation")
    assert code == EXIT_OK


def test_verify_wrong_degree(capsys):
    code, rep, _ = run_json(capsys, "verify", CONFIGS / "trivial_z2.json", "swap", "--axiom", "jordan-superderivation-deg0")
    assert code == EXIT_FAIL
    assert rep["witness"] == [[1, 0]]


def test_verify_unknown_axiom_and_missing_map(capsys):
    assert run(capsys, "verify", CONFIGS / "trivial_z2.json", "zero", "--axiom", "antiderivation")[0] == EXIT_INPUT
    assert run(capsys, "verify", CONFIGS / "trivial_z2.json", "nothing", "--axiom", "derivation")[0] == EXIT_INPUT


def test_verify_map_from_path(capsys, tmp_path):
    p = tmp_path / "d.json"
    p.write_text(json.dumps({"images": [[0]]}))
    assert run(capsys, "verify", CONFIGS / "identity_z3.json", p, "--axiom", "derivation")[0] == EXIT_OK


def test_decompose_zero_pair(capsys):
    code, rep, _ = run_json(capsys, "decompose", CONFIGS / "trivial_z2.json", "zero")
    assert code == EXIT_OK
    assert all(c["passed"] for c in rep["checks"])
    assert rep["components"]["ring_part"] == [[0]]


def test_decompose_triangular_reports_corner_element(capsys):
    code, rep, _ = run_json(capsys, "decompose", CONFIGS / "triangular_z3.json", "zero", "corner")
    assert code == EXIT_OK
    assert rep["components"]["corner_element"] == [1]
    assert rep["inner_element"] == [0, 1, 0]


def test_decompose_needs_a_structured_ring(capsys):
    code, out, err = run(capsys, "decompose", CONFIGS / "identity_z3.json", "identity")
    assert code == EXIT_INPUT  # Z3 has no trivial-extension or triangular picture
    assert "not a trivial extension or triangular ring" in err


def test_decompose_refused_by_axiom(capsys, tmp_path):
    p = tmp_path / "gamma.json"
    p.write_text(json.dumps({"images": [[0, 1], [0, 0]]}))
    code, rep, _ = run_json(capsys, "decompose", CONFIGS / "trivial_z3.json", "module_identity", p)
    assert code == EXIT_FAIL
    assert rep["passed"] is False
    assert rep["verdict"]["witness"] == [[1, 0], [1, 0]]


def test_decompose_torsion_gate(capsys):
    code, out, _ = run(capsys, "decompose", CONFIGS / "upper_t2_z2.json", "inner_e12")
    assert code == EXIT_FAIL
    assert out.startswith("refused:")


def test_decompose_module_square_flags_violation(capsys):
    code, out, _ = run(capsys, "decompose", CONFIGS / "trivial_z3.json", "module_square")
    assert code == EXIT_FAIL
    assert "THEOREM VIOLATION B is a Jordan biderivation" in out


@pytest.mark.parametrize("workers", [1, 4])
def test_enumerate(capsys, workers):
    code, rep, _ = run_json(capsys, "enumerate", CONFIGS / "trivial_z3.json", "--class", "jordan-superderivation", "--workers", workers)
    assert code == EXIT_OK
    assert [r["count"] for r in rep["results"]] == [3, 3]
    assert rep["exploratory"] is False


def test_enumerate_bound_and_sample(capsys):
    assert run(capsys, "enumerate", CONFIGS / "triangular_z3.json", "--class", "jordan-superderivation", "--degree", "0", "--bound", "10")[0] == EXIT_INPUT
    code, rep, _ = run_json(capsys, "enumerate", CONFIGS / "triangular_z3.json", "--class", "jordan-superderivation", "--degree", "0", "--sample", "20", "--seed", "1")
    assert code == EXIT_OK
    assert rep["exploratory"] is True
    assert rep["results"][0]["sampled"] == 20


def test_enumerate_lists_jordan_maps_that_are_not_derivations(capsys):
    code, rep, _ = run_json(capsys, "enumerate", CONFIGS / "upper_t2_z2.json", "--class", "jordan-derivation")
    item = rep["results"][0]
    assert (item["count"], len(item["not_derivations"])) == (16, 12)


def test_suite_on_small_matrix(capsys, tmp_path):
    matrix = tmp_path / "m.json"
    matrix.write_text(json.dumps({"entries": [{"name": "T(Z2,Z2)", "ring": json.loads((CONFIGS / "trivial_z2.json").read_text())["ring"], "criteria": [1, 2, 9]}]}))
    out_file = tmp_path / "r.json"
    code, rep, _ = run_json(capsys, "suite", "--matrix", matrix, "--no-timings", "--output", out_file)
    # criteria with no entry in the matrix are not exercised, so the run is not a pass
    assert code == EXIT_FAIL
    assert "timings" not in rep
    by_id = {c["id"]: c for c in rep["criteria"]}
    assert sorted(by_id) == list(range(1, 10))
    assert all(by_id[i]["passed"] for i in (1, 2, 9))
    assert all(not by_id[i]["entries"] and not by_id[i]["passed"] for i in (3, 4, 5, 6, 7, 8))
    assert json.loads(out_file.read_text()) == rep
