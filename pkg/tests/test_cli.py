from __future__ import annotations

import json
import subprocess
import sys

import jsonschema
import pytest

from projrig import fileio
from projrig.cli import main


@pytest.fixture
def pappus_file(tmp_path, capsys):
    path = tmp_path / "pappus.json"
    assert main(["generate", "pappus", "--paper-coords", "-o", str(path)]) == 0
    capsys.readouterr()
    return path


def run_json(capsys, argv):
    assert main(argv) == 0
    out = capsys.readouterr().out
    rep = json.loads(out)
    jsonschema.validate(rep, fileio.report_schema())
    return rep, out


def test_analyze_json(capsys, pappus_file):
    rep, out = run_json(capsys, ["analyze", str(pappus_file), "--json"])
    a = rep["analysis"]
    assert (a["rank"], a["stressDim"], a["nontrivialFlexDim"]) == (26, 1, 2)
    # stable key order across runs
    _, again = run_json(capsys, ["analyze", str(pappus_file), "--json"])
    assert out == again


def test_analyze_numeric_and_pins(capsys, pappus_file):
    rep, _ = run_json(capsys, ["analyze", str(pappus_file), "--numeric", "--pin", "A1,A3,B1,B3", "--json"])
    assert rep["analysis"]["arithmeticMode"] == "numeric"
    assert rep["analysis"]["pinnedNullity"] == 2


def test_stress_verify_balance(capsys, pappus_file):
    assert main(["stress", str(pappus_file), "--verify-balance", "--basis"]) == 0
    out = capsys.readouterr().out
    assert "stress dim 1" in out and "balanced: true" in out
    rep, _ = run_json(capsys, ["stress", str(pappus_file), "--verify-balance", "--json"])
    assert rep["stresses"]["balance"][0]["overall"] is True


def test_flex(capsys, pappus_file):
    rep, _ = run_json(capsys, ["flex", str(pappus_file), "--nontrivial-only", "--json"])
    assert rep["flexes"]["nullity"] == 10 and len(rep["flexes"]["basis"]) == 2
    rep, _ = run_json(capsys, ["flex", str(pappus_file), "--json"])
    assert len(rep["flexes"]["basis"]) == 10


def test_second_order_on_mechanism(capsys, tmp_path):
    path = tmp_path / "t.json"
    assert main(["generate", "conic-mechanism", "--mode", "tangent", "-o", str(path)]) == 0
    capsys.readouterr()
    rep, _ = run_json(capsys, ["second-order", str(path), "--json"])
    so = rep["secondOrder"]
    assert so["pinnedNullity"] == 1 and so["verdict"] == "second-order-rigid" and so["outcome"] == "obstructed"


def test_second_order_needs_pins(capsys, pappus_file):
    assert main(["second-order", str(pappus_file)]) == 2


def test_missing_file_exit_code(capsys, tmp_path):
    assert main(["analyze", str(tmp_path / "missing.json")]) == 2
    assert "error" in capsys.readouterr().err


def test_chart_error_suggests_normalization(capsys, tmp_path):
    path = tmp_path / "q.json"
    main(["generate", "quadrangle", "-o", str(path)])
    assert main(["analyze", str(path)]) == 2
    assert "--normalize-seed" in capsys.readouterr().err
    rep, _ = run_json(capsys, ["analyze", str(path), "--normalize-seed", "3", "--json"])
    assert rep["analysis"]["labels"]["rigidity"] == "isostatic"
    assert rep["normalizeSeed"] == 3


def test_unknown_pin_ids(capsys, pappus_file):
    assert main(["analyze", str(pappus_file), "--pin", "nope"]) == 2


def test_svg_command(tmp_path, pappus_file):
    out = tmp_path / "p.svg"
    assert main(["svg", str(pappus_file), "-o", str(out), "--stress", "--anchor", "A2,A2.B1.C1"]) == 0
    first = out.read_bytes()
    assert main(["svg", str(pappus_file), "-o", str(out), "--stress", "--anchor", "A2,A2.B1.C1"]) == 0
    assert out.read_bytes() == first
    assert b">-2</text>" in first
    assert main(["svg", str(pappus_file), "-o", str(out), "--flex", "--scale", "0.05"]) == 0
    assert b'class="flex"' in out.read_bytes()


def test_dualize_and_extend(tmp_path, pappus_file, capsys):
    dual = tmp_path / "d.json"
    ext = tmp_path / "e.json"
    assert main(["dualize", str(pappus_file), "-o", str(dual)]) == 0
    assert fileio.load(dual).counts == (9, 9, 27)
    assert main(["extend", str(pappus_file), "--add-line", "A1,B1", "--id", "new", "-o", str(ext)]) == 0
    cfg = fileio.load(ext)
    assert "new" in cfg.lines and cfg.counts == (9, 10, 29)
    assert main(["extend", str(pappus_file), "-o", str(ext)]) == 2
    assert main(["extend", str(pappus_file), "--add-point", "A1.A2.A3,nope", "-o", str(ext)]) == 2


def test_generate_grid_limit(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("PROJRIG_MAX_GRID_LEVEL", "1")
    assert main(["generate", "dyadic-grid", "--level", "2", "-o", str(tmp_path / "g.json")]) == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["generate", "heptagram", "-o", "x.json"])
    assert exc.value.code == 2


def test_module_entry_point(pappus_file):
    proc = subprocess.run([sys.executable, "-m", "projrig", "analyze", str(pappus_file)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "rank 26" in proc.stdout
