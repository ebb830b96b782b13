import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from hochkit.cli import main, parse_tasks, schema

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run_cli(tmp_path, *args):
    out = tmp_path / "report.json"
    status = main([*args, "--out", str(out)])
    return status, json.loads(out.read_text()) if out.exists() else None


def test_parse_tasks():
    assert parse_tasks("hochschild, oracle") == ["hochschild", "oracle"]
    assert "chern" not in parse_tasks("all")
    assert parse_tasks("all,chern")[-1] == "chern"


def test_dual_numbers_all_tasks(tmp_path):
    status, report = run_cli(tmp_path, "--input", str(DATA / "dual_numbers.txt"),
                             "--max-degree", "4", "--max-weight", "6", "--tasks", "all")
    assert status == 0
    jsonschema.validate(report, schema())
    checks = report["checks"]
    assert checks["oracle_match"] is True
    assert checks["phi_iso"] is True and checks["psi_iso"] is True
    assert checks["sum_rule"] is True
    assert all(p["passed"] for p in checks["properties"])
    totals = [sum(r["dim"] for r in report["hh"] if r["n"] == n) for n in range(5)]
    assert totals == [2, 1, 1, 1, 1]


def test_hochschild_only(tmp_path):
    status, report = run_cli(tmp_path, "--input", str(DATA / "line.txt"),
                             "--max-degree", "2", "--max-weight", "3", "--tasks", "hochschild")
    assert status == 0
    jsonschema.validate(report, schema())
    assert report["hh"] and not report["oracle"] and not report["decomposition"]
    assert report["checks"]["phi_iso"] is None


def test_reports_are_reproducible(tmp_path):
    args = ["--input", str(DATA / "non_ci.txt"), "--max-degree", "2", "--max-weight", "4",
            "--tasks", "all", "--threads", "2"]
    main([*args, "--out", str(tmp_path / "a.json")])
    main([*args, "--out", str(tmp_path / "b.json")])
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_timings_are_opt_in(tmp_path):
    status, report = run_cli(tmp_path, "--input", str(DATA / "line.txt"), "--max-degree", "1",
                             "--max-weight", "2", "--tasks", "hochschild", "--timings")
    assert status == 0
    assert "hochschild" in report["timings"]


def test_chern_task(tmp_path):
    status, report = run_cli(tmp_path, "--input", str(DATA / "dual_numbers.txt"),
                             "--max-degree", "2", "--max-weight", "3", "--tasks", "chern",
                             "--complex", str(DATA / "koszul_dual.json"))
    assert status == 0
    jsonschema.validate(report, schema())
    assert report["chern"]["diagnostics"] == []
    assert report["chern"]["atiyah_closed"] is True


def test_bad_complex_fails(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"generators": [{"name": "e0", "degree": -1, "weight": 1},
                                              {"name": "e1", "degree": 0, "weight": 0}],
                               "differential": [["0", "x"], ["x", "0"]]}))
    status, report = run_cli(tmp_path, "--input", str(DATA / "dual_numbers.txt"),
                             "--max-degree", "1", "--max-weight", "2", "--tasks", "chern",
                             "--complex", str(bad))
    assert status == 1
    assert report["chern"]["diagnostics"]


def test_unreadable_file(tmp_path, capsys):
    assert main(["--input", str(tmp_path / "missing.txt")]) == 2
    assert "error" in capsys.readouterr().err


def test_parse_error_exit(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("var x weight 1;\nrel x^2 + x;\n")
    assert main(["--input", str(f)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hochkit", "--input",
                           str(DATA / "line.txt"), "--max-degree", "1", "--max-weight", "2",
                           "--tasks", "hochschild"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["window"] == {"max_degree": 1, "max_weight": 2}
