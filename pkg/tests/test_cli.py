import json

import pytest

from partsep.cli import main
from partsep.slices import rho_modular, rho_st
from partsep.xcore import xmatrix_to_json


@pytest.fixture
def state_file(tmp_path):
    def write(m, name="state.json"):
        p = tmp_path / name
        p.write_text(json.dumps(xmatrix_to_json(m)))
        return str(p)

    return write


def test_classify_in_boundary(state_file, capsys):
    code = main(["classify", state_file(rho_st(1, 0)), "--cone", "A&(B|C)"])
    out = capsys.readouterr().out
    assert "verdict: IN (boundary)" in out and "mode: exact" in out
    assert code == 2


def test_classify_in_interior(state_file):
    assert main(["classify", state_file(rho_st(0, 0)), "--cone", "A"]) == 0


def test_classify_out_with_witness(state_file, capsys):
    code = main(["classify", state_file(rho_st(1, 0)), "--cone", "(A&B)|(A&C)"])
    out = capsys.readouterr().out
    assert code == 1
    assert "certificate: witness" in out and "pairing: -" in out


def test_classify_json(state_file, capsys):
    code = main(["classify", state_file(rho_st(1, 0)), "--cone", "(A&B)|(A&C)", "--json"])
    data = json.loads(capsys.readouterr().out)
    assert code == 1
    assert data["verdict"] == "OUT" and data["certificate"] == "witness"
    assert "dual_tag" in data["witness"]


def test_classify_float_mode(state_file, capsys):
    code = main(["classify", state_file(rho_st(0, 0)), "--cone", "A", "--mode", "float"])
    assert code == 0 and "tol" in capsys.readouterr().out


def test_classify_errors(tmp_path, state_file):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["classify", str(bad), "--cone", "A"]) == 3
    assert main(["classify", str(tmp_path / "missing.json"), "--cone", "A"]) == 3
    assert main(["classify", state_file(rho_st(1, 1)), "--cone", "A"]) == 3
    assert main(["classify", state_file(rho_st(0, 0)), "--cone", "A&(B"]) == 3


def test_usage_error_exit():
    with pytest.raises(SystemExit) as exc:
        main(["classify"])
    assert exc.value.code == 3


def test_witness_found(state_file, capsys):
    code = main(["witness", state_file(rho_modular(1)), "--cone", "(A&B)|(A&C)"])
    out = capsys.readouterr().out
    assert code == 0 and "pairing: -" in out


def test_witness_basic_cone(state_file, capsys):
    assert main(["witness", state_file(rho_st(1, 0)), "--cone", "B", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["witness"]["dual_tag"] == "B°"


def test_witness_inconclusive(state_file, capsys):
    assert main(["witness", state_file(rho_st(0, 0)), "--cone", "A"]) == 2
    assert "inconclusive" in capsys.readouterr().out


def test_witness_unsupported(state_file):
    assert main(["witness", state_file(rho_st(1, 0)), "--cone", "A|(B&(A|C))"]) == 4


def test_slice_outputs(tmp_path, capsys):
    csv, svg = tmp_path / "a.csv", tmp_path / "a.svg"
    code = main(["slice", "--grid", "11", "--csv", str(csv), "--svg", str(svg)])
    assert code == 0 and "mismatches: 0" in capsys.readouterr().out
    assert csv.read_bytes().startswith(b"s,t,")
    assert svg.read_bytes().startswith(b"<?xml")


def test_slice_json_figure2(capsys):
    assert main(["slice", "--grid", "7", "--figure", "2", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["total"] == 0 and "fullsep~FullSep" in data["mismatches"]


def test_slice_bad_grid():
    assert main(["slice", "--grid", "1"]) == 3


def test_verify_exact(capsys):
    assert main(["verify", "--samples", "20"]) == 0
    assert "all passed" in capsys.readouterr().out


def test_verify_loose_tolerance_fails(capsys):
    assert main(["verify", "--samples", "5", "--tol", "1e3", "--json"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["passed"] is False
