import json
import subprocess
import sys

import pytest

from soaring_esc.cli import main
from soaring_esc.sim.io import read_csv


def test_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    for name in ["case1-esc1", "case5-esc2", "toy-classic", "toy-augmented", "baseline-still"]:
        assert name in out


def test_list_json_round_trips_into_run(capsys, tmp_path):
    assert main(["list", "--format", "json"]) == 0
    items = json.loads(capsys.readouterr().out)
    assert len(items) == 13
    name = items[0]["name"]
    assert main(["run", "--case", name, "--duration", "0.05", "--out", str(tmp_path / "a.csv")]) == 0


def test_run_writes_csv(tmp_path, capsys):
    out = tmp_path / "r.csv"
    assert main(["run", "--case", "case1-esc1", "--out", str(out)]) == 0
    cols, rows = read_csv(out)
    assert cols[:17] == "t,x,y,z,V,gamma,psi,phi,J_measured,J_clean,e,TE,KE,PE,W,Wdot,n".split(",")
    assert len(rows) == 10001
    text = capsys.readouterr().out
    assert "TE_initial:" in text and "TE_final:" in text and "TE_span_relative:" in text
    assert "energy_rate_residual:" in text


def test_summary_lines_recomputable(tmp_path, capsys):
    out = tmp_path / "r.csv"
    main(["run", "--case", "case3-esc1", "--duration", "1", "--out", str(out)])
    summary = dict(line.split(": ", 1) for line in capsys.readouterr().out.splitlines() if ": " in line)
    cols, rows = read_csv(out)
    TE = [r[cols.index("TE")] for r in rows]
    assert abs(float(summary["TE_final"]) - TE[-1]) <= 1e-12 * abs(TE[-1])
    assert abs(float(summary["TE_min"]) - min(TE)) <= 1e-12 * abs(min(TE))
    assert abs(float(summary["TE_span_relative"]) - (max(TE) - min(TE)) / TE[0]) < 1e-12


def test_run_json(tmp_path):
    out = tmp_path / "r.json"
    assert main(["run", "--case", "toy-augmented", "--duration", "1", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["columns"][0] == "t" and len(doc["rows"]) == 1001


def test_run_abort_exit_code(tmp_path):
    assert main(["run", "--case", "case4-esc1", "--out", str(tmp_path / "a.csv")]) == 2


def test_run_config_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"base": "case1-esc1", "wings": 3}))
    assert main(["run", "--config", str(bad), "--out", str(tmp_path / "x.csv")]) == 1
    assert main(["run", "--case", "nope"]) == 1
    assert main(["run"]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["run", "--format", "xml", "--case", "case1-esc1"])
    assert exc.value.code == 1


def test_run_several_cases(tmp_path, capsys):
    assert main(["run", "--case", "case1-esc2", "--case", "case3-esc2", "--duration", "0.2",
                 "--jobs", "2", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "case1-esc2.csv").exists() and (tmp_path / "case3-esc2.csv").exists()


def test_validate_case(capsys):
    assert main(["validate", "--case", "case1-esc2"]) == 0
    out = capsys.readouterr().out
    for c in ("C1: PASS", "C2: PASS", "C3: PASS", "C4: PASS", "C5: PASS"):
        assert c in out
    assert "not checked (f'' absent)" in out


def test_validate_mutated_config(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"base": "case1-esc2", "controller": {"type": "esc2", "c4": -1}}))
    assert main(["validate", "--config", str(cfg)]) == 1
    assert "C5: FAIL" in capsys.readouterr().out


def test_validate_esc1_is_usage_error(capsys):
    assert main(["validate", "--case", "case1-esc1"]) == 1
    assert "ESC2" in capsys.readouterr().err


def test_validate_with_curvature(capsys):
    assert main(["validate", "--case", "toy-augmented", "--fpp", "2", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["C5-loop"]["checked"] and doc["overall"]
    assert main(["validate", "--case", "case1-esc2", "--fpp", "estimate"]) in (0, 1)
    assert "interpretation-dependent" in capsys.readouterr().out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "soaring_esc", "list"], capture_output=True, text=True)
    assert r.returncode == 0 and "toy-classic" in r.stdout
