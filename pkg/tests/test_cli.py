import csv
import json
import math
import subprocess
import sys

import pytest

from chyp.cli import main, read_config
from chyp.trianglegroup import alpha_zero


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    data = json.loads(out) if out.strip().startswith("{") else None
    return code, data, err


def test_classify_examples(capsys):
    code, data, _ = run(capsys, "classify", 3, 0)
    assert code == 0 and data == {"class": "boundary", "f_value": 0.0}
    code, data, _ = run(capsys, "classify", 0, 0)
    assert data["f_value"] == -27 and data["class"] == "regular-elliptic"
    code, data, _ = run(capsys, "classify", 25.45585, 0)
    assert data["class"] == "hyperbolic"


def test_usage_errors(capsys):
    assert run(capsys, "classify", "x", 0)[0] == 2
    assert run(capsys, "classify")[0] == 2
    assert run(capsys, "falsify", "--alpha", "abc")[0] == 2
    assert run(capsys, "classify", 0, 0, "--tol", "-1")[0] == 2
    assert run(capsys, "alpha-scan", "--resolution", 1)[0] == 2
    assert run(capsys, "nope")[0] == 2
    assert run(capsys, "cover", "--genus", 1)[0] == 2


def test_domain_errors(capsys):
    code, _, err = run(capsys, "alpha-scan", "--n", 3, "--resolution", 10)
    assert code == 3 and "BadN" in err
    assert run(capsys, "build-triangle", "--p", 2, "--q", 3, "--r", 6)[0] == 3


def test_alpha_scan(capsys, tmp_path):
    code, data, _ = run(capsys, "alpha-scan", "--out", tmp_path)
    assert code == 0
    assert abs(data["transition"] - 0.4506) <= 0.003
    assert abs(data["transition"] - alpha_zero(9)) <= data["step"]
    with open(tmp_path / "alpha_scan.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 1000
    svg = (tmp_path / "alpha_scan.svg").read_text()
    assert svg.startswith("<svg") and "polyline" in svg


def test_alpha_scan_n4_ordering(capsys, tmp_path):
    code, data, _ = run(capsys, "alpha-scan", "--n", 4, "--resolution", 200, "--out", tmp_path)
    assert code == 0
    assert data["alpha_min"] < data["alpha_zero"] < math.pi


def test_gon18_report(capsys, tmp_path):
    code, data, _ = run(capsys, "gon18", "--out", tmp_path)
    assert code == 0
    assert data["area"] == pytest.approx(4 * math.pi, abs=1e-6)
    assert data["cycles"] == 6 and data["genus"] == pytest.approx(2)
    assert data["closure_step"] == 19 and data["self_intersections"] == 9
    assert (tmp_path / "gon18.svg").exists() and (tmp_path / "gon18_vertices.csv").exists()


def test_falsify(capsys, tmp_path):
    a = alpha_zero(9) - 0.2
    code, data, _ = run(capsys, "falsify", "--alpha", a, "--out-csv", "--out", tmp_path)
    assert code == 0 and data["count"] > 0
    assert "1323" in {w["word"] for w in data["witnesses"]}
    assert (tmp_path / "witnesses.csv").exists()
    code, data, _ = run(capsys, "falsify", "--alpha", math.pi, "--maxlen", 8)
    assert code == 0 and data["count"] == 0


def test_build_triangle(capsys):
    code, data, _ = run(capsys, "build-triangle", "--alpha", alpha_zero(9))
    assert code == 0
    wa = data["traces"]["W_A"]
    assert wa["re"] == pytest.approx(3, abs=1e-9) and abs(wa["im"]) <= 1e-9
    assert all(t["closed_form_error"] <= 1e-9 for t in data["traces"].values())
    code, data, _ = run(capsys, "build-triangle", "--p", "inf", "--q", "inf", "--r", "inf")
    assert code == 0 and data["params"]["p"] == "inf"


def test_cosets_and_cover(capsys, tmp_path):
    code, data, _ = run(capsys, "cosets", "--out", tmp_path)
    assert code == 0 and data["index"] == 18 and data["labels_realized"] == 18
    assert set(data["pairing_word_labels"].values()) == {0}
    for g in (2, 3, 5, 7):
        code, data, _ = run(capsys, "cover", "--genus", g)
        assert code == 0
        assert data["degree"] == g - 1 and data["euler_char"] == -2 * (g - 1)
        assert data["psi_lf"] == 0


def test_adjudicate(capsys, tmp_path):
    code, first, _ = run(capsys, "adjudicate")
    assert code == 0
    assert first["matched_constant"] in {"+3", "-3"}
    assert first["ideal"]["oracle_2x2"] == pytest.approx(-17)
    orders = first["orders_339"]
    assert orders["GramPaper"]["orders"] == {"I1I2": 6, "I2I3": 18, "I3I1": 6}
    assert orders["RelationEnforcing"]["orders"] == {"I1I2": 9, "I2I3": 3, "I3I1": 3}
    _, second, _ = run(capsys, "adjudicate")
    assert first == second


def test_deltoid_plot(capsys, tmp_path):
    code, data, _ = run(capsys, "deltoid-plot", "--trace", "3,0", "--trace", "0,0", "--out", tmp_path)
    assert code == 0
    assert [p["class"] for p in data["points"]] == ["boundary", "regular-elliptic"]


def test_outputs_are_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    outs = []
    for d in (a, b):
        run(capsys, "gon18", "--out", d)
        run(capsys, "alpha-scan", "--resolution", 100, "--out", d)
        outs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    assert outs[0] == outs[1]
    assert len(outs[0]) == 4


def test_config_file_and_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# scan settings\nn = 4\nresolution = 60  # coarse\n")
    assert read_config(cfg) == {"n": "4", "resolution": "60"}
    code, data, _ = run(capsys, "alpha-scan", "--config", cfg, "--out", tmp_path)
    assert code == 0 and data["n"] == 4 and data["resolution"] == 60
    code, data, _ = run(capsys, "alpha-scan", "--config", cfg, "--n", 9, "--out", tmp_path)
    assert data["n"] == 9 and data["resolution"] == 60
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = red\n")
    assert run(capsys, "alpha-scan", "--config", bad)[0] == 2
    assert run(capsys, "alpha-scan", "--config", tmp_path / "missing.cfg")[0] == 2


def test_env_tolerance(capsys, monkeypatch):
    # f(3.001) is about 1e-5: boundary under a loose tolerance only
    monkeypatch.setenv("CHYP_TOL", "1e-3")
    assert run(capsys, "classify", 3.001, 0)[1]["class"] == "boundary"
    monkeypatch.setenv("CHYP_TOL", "1e-9")
    assert run(capsys, "classify", 3.001, 0)[1]["class"] == "hyperbolic"
    assert run(capsys, "classify", 3.001, 0, "--tol", "1e-3")[1]["class"] == "boundary"
    monkeypatch.setenv("CHYP_TOL", "zero")
    assert run(capsys, "classify", 0, 0)[0] == 2


def test_console_script():
    out = subprocess.run(
        [sys.executable, "-m", "chyp.cli", "classify", "3", "0"], capture_output=True, text=True
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["class"] == "boundary"
