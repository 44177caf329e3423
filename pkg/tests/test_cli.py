import json
import subprocess
import sys

import pytest

from chnsoliton.cli import main


def write(tmp_path, doc, name="doc.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


RBZ = {"n": 2, "basis": [[1, 0, 0, 0], [0, 0, 0, 1]], "label": "RB+RZ"}
HEIS = {"n": 2, "basis": [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_json(tmp_path, capsys):
    code, out, _ = run(["check", write(tmp_path, RBZ)], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["classification"]["item"] == "II"
    assert rep["geometry"]["totallyGeodesic"] is True


def test_check_markdown(tmp_path, capsys):
    code, out, _ = run(["check", write(tmp_path, HEIS), "--format", "markdown"], capsys)
    assert code == 0 and "item IV" in out


def test_classify_heisenberg(tmp_path, capsys):
    code, out, _ = run(["classify", write(tmp_path, HEIS)], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["item"] == "IV"
    assert rep["certificate"]["c"] == pytest.approx(-1.5)


def test_classify_not_soliton_exit_1(tmp_path, capsys):
    c, s = 0.5, 0.75 ** 0.5
    doc = {"n": 3, "basis": [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, c, 0, s, 0], [0, 0, 0, 0, 0, 1]]}
    code, out, _ = run(["classify", write(tmp_path, doc)], capsys)
    assert code == 1 and json.loads(out)["label"] == "NotSoliton"


def test_invalid_documents(tmp_path, capsys):
    code, _, err = run(["check", write(tmp_path, {"n": 2, "basis": [[0, 1, 0, 0], [0, 0, 1, 0]]})], capsys)
    assert code == 2 and "closure residual" in err
    assert run(["check", write(tmp_path, "not json")], capsys)[0] == 2
    assert run(["check", write(tmp_path, {"n": 2, "basis": [[1, 0, 0]]})], capsys)[0] == 2
    assert run(["check", str(tmp_path / "missing.json")], capsys)[0] == 2


def test_ricci(tmp_path, capsys):
    code, out, _ = run(["ricci", write(tmp_path, HEIS)], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["eigenvalues"] == pytest.approx([-0.5, -0.5, 0.5])
    assert rep["gaussResidual"] < 1e-12


def test_family_round_trip(tmp_path, capsys):
    out_path = str(tmp_path / "fam.json")
    code, out, _ = run(["family", "--item", "3", "--n", "4", "--dim-mphi", "2", "--phi", "0.5",
                        "--seed", "1", "--out", out_path], capsys)
    assert code == 0 and "|U| = tan(phi)" in out
    code, out, _ = run(["classify", out_path], capsys)
    assert code == 0 and json.loads(out)["item"] == "III"


def test_family_infeasible(capsys):
    code, _, err = run(["family", "--item", "3", "--n", "3", "--dim-mphi", "2", "--phi", "0.5"], capsys)
    assert code == 2
    assert "|U| = tan(phi)" in err and "pieces fit" in err
    assert run(["family", "--item", "VII", "--n", "3"], capsys)[0] == 2


def test_scan_byte_identical(tmp_path, capsys):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    assert run(["scan", "--n", "3", "--samples", "40", "--seed", "9", "--out", a], capsys)[0] == 0
    assert run(["scan", "--n", "3", "--samples", "40", "--seed", "9", "--jobs", "2", "--out", b], capsys)[0] == 0
    assert open(a, "rb").read() == open(b, "rb").read()


def test_scan_zero_samples(capsys):
    code, out, err = run(["scan", "--samples", "0"], capsys)
    assert code == 0 and json.loads(out)["processed"] == 0
    assert "| outcome | count |" in err


def test_reproduce(capsys):
    code, out, _ = run(["reproduce", "--n", "4", "--samples", "2", "--convention", "corrected"], capsys)
    assert code == 0 and "MISMATCH" not in out
    code, out, _ = run(["reproduce", "--n", "4", "--samples", "2"], capsys)
    assert code == 1 and "## Diff" in out


def test_tolerance_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SOLITON_TOL", "nope")
    assert run(["check", write(tmp_path, RBZ)], capsys)[0] == 2


def test_bad_arguments(capsys):
    assert run([], capsys)[0] == 2
    assert run(["scan", "--samples", "-1"], capsys)[0] == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "chnsoliton", "classify", write(tmp_path, RBZ)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["alsoMatches"] == ["III"]
