import json

import pytest

from sunisb.cli import main
from sunisb.fock import from_json
from sunisb.isb import IrrepLabel, basis_from_json, irrep_basis


def test_basis_antitriplet(tmp_path, capsys):
    out = tmp_path / "b.json"
    assert main(["basis", "--N", "3", "--irrep", "1,1", "--out", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "dim=3 weyl=3 OK"
    lab, states = basis_from_json(out.read_text())
    assert lab == IrrepLabel((1, 1), 3)
    assert states == irrep_basis(lab)


def test_basis_su2(tmp_path, capsys):
    assert main(["basis", "--N", "2", "--irrep", "4", "--out", str(tmp_path / "b.json")]) == 0
    assert capsys.readouterr().out.strip() == "dim=5 weyl=5 OK"


def test_basis_is_reproducible(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["basis", "--N", "4", "--irrep", "2,1", "--out", str(a)])
    main(["basis", "--N", "4", "--irrep", "2,1", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["irrep"] == [2, 1, 0]


def test_basis_invalid_irrep(capsys):
    assert main(["basis", "--N", "3", "--irrep", "1,2"]) == 1
    assert "non-increasing" in capsys.readouterr().err


def test_verify_octet(tmp_path):
    out = tmp_path / "v.json"
    assert main(["verify", "--N", "3", "--irrep", "2,1", "--out", str(out)]) == 0
    reports = json.loads(out.read_text())
    assert all(r["pass"] for r in reports)
    assert {r["check"] for r in reports} >= {"constraint_annihilation", "lie_algebra", "dimension"}


def test_verify_su4_constraints_exact(tmp_path):
    out = tmp_path / "v.json"
    assert main(["verify", "--N", "4", "--irrep", "1,1,1", "--out", str(out)]) == 0
    ca = [r for r in json.loads(out.read_text()) if r["check"] == "constraint_annihilation"][0]
    assert ca["exact"] and ca["max_residual"] == 0.0 and ca["nonzero"] == 0


def test_verify_su2_casimir(tmp_path, capsys):
    out = tmp_path / "v.json"
    assert main(["verify", "--N", "2", "--irrep", "3", "--out", str(out)]) == 0
    qc = [r for r in json.loads(out.read_text()) if r["check"] == "quadratic_casimir"][0]
    assert qc["value"] == 1.5 * 2.5
    assert "value=3.75" in capsys.readouterr().out


def test_resolve_id(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["resolve-id", "--N", "2", "--irrep", "2", "--samples", "20000", "--seed", "7"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["pass"] and rep["c"] == pytest.approx(1 / 3)
    assert set(rep) >= {"irrep", "dim", "samples", "c", "max_offdiag", "max_diag_dev", "stderr", "pass", "seed"}


def test_resolve_id_tiny_sample(tmp_path):
    out = tmp_path / "r.json"
    code = main(["resolve-id", "--N", "3", "--irrep", "1,0", "--samples", "100", "--out", str(out)])
    rep = json.loads(out.read_text())
    assert code == (0 if rep["pass"] else 2)
    assert rep["samples"] == 100


def test_coherent_json_and_csv(tmp_path):
    out = tmp_path / "c.json"
    frame = tmp_path / "f.csv"
    assert main(["coherent", "--N", "3", "--irrep", "2,1", "--seed", "5", "--out", str(out),
                 "--frame-out", str(frame)]) == 0
    doc = json.loads(out.read_text())
    v = from_json(doc["state"])
    assert len(doc["components"]) == 8
    out2 = tmp_path / "c2.json"
    assert main(["coherent", "--N", "3", "--irrep", "2,1", "--frame", str(frame), "--out", str(out2)]) == 0
    assert from_json(json.loads(out2.read_text())["state"]) == v
    csv_out = tmp_path / "c.csv"
    assert main(["coherent", "--N", "3", "--irrep", "2,1", "--seed", "5", "--format", "csv",
                 "--out", str(csv_out)]) == 0
    assert csv_out.read_text().startswith("occ,re,im\n")


def test_euler_check(tmp_path):
    out = tmp_path / "e.json"
    assert main(["euler-check", "--N", "2", "--irrep", "3", "--seed", "1", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["j"] == 1.5 and len(doc["trials"]) == 10 and doc["pass"]


def test_euler_check_requires_su2():
    assert main(["euler-check", "--N", "3", "--irrep", "1"]) == 1


def test_bad_seed():
    assert main(["basis", "--N", "2", "--irrep", "1", "--seed", "-1"]) == 1
