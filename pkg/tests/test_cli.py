import json
import subprocess
import sys

import pytest

from traceideal.cli import compare, fixture_files, load_fixtures, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "sg:4,5,6", "--field", "F2", "--json", "--ideal", "t5,t6,t8")
    assert code == 0
    data = json.loads(out)
    assert data["invariants"]["multiplicity"] == 4
    assert data["ideals"][0]["is_trace"] is True


def test_analyze_text_and_antistable(capsys):
    code, out, _ = run(capsys, "analyze", "sg:2,3", "--field", "F2", "--antistable", "4")
    assert code == 0
    assert "gorenstein: True" in out
    assert "antistable.antistable: True" in out


def test_enumerate_golden(capsys, tmp_path):
    golden = tmp_path / "g.json"
    golden.write_text(json.dumps({"expect": {"counts": {"X": 2, "Y": 3}, "verdicts": {"rho_surjective": False}}}))
    code, out, err = run(capsys, "enumerate", "sg:3,4,5", "--field", "F2", "--expect", str(golden))
    assert code == 0 and "|X| = 2" in out
    golden.write_text(json.dumps({"counts": {"X": 3}}))
    code, _, err = run(capsys, "enumerate", "sg:3,4,5", "--field", "F2", "--expect", str(golden))
    assert code == 1 and '"mismatch"' in err


def test_enumerate_monomial_only_over_q(capsys):
    code, out, _ = run(capsys, "enumerate", "sg:4,5,6", "--monomial-only", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["exhaustive"] is False and data["counts"]["Y_monomial"] == 6


def test_exit_codes(capsys):
    assert run(capsys, "enumerate", "sg:4,5,6")[0] == 2
    assert run(capsys, "analyze", "sg:4,6", "--field", "F2")[0] == 2
    assert run(capsys, "analyze", "sg:2,3", "--field", "F2", "--ideal", "t2+")[0] == 2
    code, _, err = run(capsys, "enumerate", "sg:6,7,8,9,10,11", "--field", "F2", "--method", "subspaces", "--max-dim", "3")
    assert code == 4 and json.loads(err.strip().splitlines()[-1])["error"] == "cap"


def test_modulus_from_config(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"moduli": {"F8/F2": [1, 0, 1, 1]}}))
    code, out, _ = run(capsys, "analyze", "resext:F8/F2", "--config", str(cfg), "--json")
    assert code == 0 and json.loads(out)["invariants"]["type"] == 2
    assert run(capsys, "analyze", "resext:F8/F2", "--modulus", "1,0,0,1")[0] == 2


def test_sg_commands(capsys):
    code, out, _ = run(capsys, "sg", "info", "4,5,6", "--json")
    assert code == 0 and json.loads(out)["frobenius"] == 7
    code, out, _ = run(capsys, "sg", "over", "3,4,5")
    assert out.split() == ["<3,4,5>", "<2,3>", "<1>"]


def test_fixtures_listed_and_passing(capsys):
    assert len(fixture_files()) == len(load_fixtures()) >= 8
    code, out, _ = run(capsys, "fixtures", "run")
    assert code == 0 and "FAIL" not in out


def test_compare_reports_paths():
    assert compare({"a": {"b": 1}}, {"a": {"b": 2}}) == ["/a/b: expected 1, got 2"]
    assert compare({"X": ["m"]}, {"X": [{"lattice": "m"}]}) == []
    assert compare({"z": 1}, {}) == ["/z: missing"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "traceideal.cli", "sg", "info", "2,3"], capture_output=True, text=True)
    assert proc.returncode == 0 and "frobenius: 1" in proc.stdout
