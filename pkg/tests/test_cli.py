"""Command-line interface: documented examples, exit codes, structured output."""
import json
import os
import subprocess
import sys

import pytest

from qmsieve.cli import EXIT_INVALID, EXIT_OK, EXIT_RESOURCE, run


def cli(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_nlcm(capsys):
    assert cli(capsys, "nlcm", "realquad:2") == (EXIT_OK, "24\n", "")


def test_wset(capsys):
    code, out, _ = cli(capsys, "wset", "Q", "2", "1")
    assert code == EXIT_OK and out.splitlines()[0] == "2, 3, 5"


def test_check_thm13_condition2(capsys):
    code, out, _ = cli(capsys, "check-thm13", "Q", "ram:2,3", "k:quad:-7", "23")
    assert code == EXIT_OK
    assert "verdict: Inconclusive" in out
    assert "reason: condition 2" in out


def test_json_is_sorted_utf8(capsys):
    code, out, _ = cli(capsys, "check-thm13", "Q", "ram:2,3", "quad:-5", "79", "--json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["verdict"] == "Empty"
    assert out == json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@pytest.mark.parametrize("argv", [
    ["nlcm", "realquad:4"], ["nlcm", "quad:-5"], ["fr", "Q", "4", "1"], ["wset", "Q", "x", "1"],
    ["splits", "ram:2", "13"], ["check-thm13", "Q", "ram:2,3", "realquad:2", "23"], ["bogus"], [],
    ["check-m1", "Q", "ram:2,3", "2", "1", "7.4"],
])
def test_invalid_input(capsys, argv):
    assert cli(capsys, *argv)[0] == EXIT_INVALID


def test_resource_exit(capsys):
    code, out, _ = cli(capsys, "check-thm13", "Q", "ram:2,3", "quad:-5", "79", "--scan-cap", "10")
    assert code == EXIT_RESOURCE and "resource" in out
    assert cli(capsys, "fr", "poly:-1,-2,1,1", "97", "1", "--box-cap", "5")[0] == EXIT_RESOURCE


def test_other_commands(capsys):
    assert cli(capsys, "torsion-bound", "Q", "2", "1")[1] == "28800\n"
    assert cli(capsys, "splits", "ram:2,3", "13")[1] == "true\n"
    code, out, _ = cli(capsys, "splits", "ram:2,3", "7")
    assert out.startswith("false")
    code, out, _ = cli(capsys, "classgroup", "multiquad:2,-17", "--json")
    assert json.loads(out)["h"] == 8
    code, out, _ = cli(capsys, "fr", "Q", "7", "1", "--json")
    assert len(json.loads(out)["classes"]) == 11
    code, out, _ = cli(capsys, "s-set", "quad:-5", "Q")
    assert out.startswith("h = 2; S over 7")
    assert cli(capsys, "check-m1", "Q", "ram:2,3", "2", "1", "7")[1].splitlines()[1] == "verdict: Empty"
    assert cli(capsys, "vset", "realquad:2", "7", "1")[0] == EXIT_OK


def test_field_from_file(capsys, tmp_path):
    p = tmp_path / "f.txt"
    p.write_text("realquad:5", encoding="utf-8")
    assert cli(capsys, "nlcm", f"@{p}")[1] == "60\n"
    assert cli(capsys, "nlcm", f"@{tmp_path / 'missing'}")[0] == EXIT_INVALID


def test_cache_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("QM_SIEVE_CACHE", str(tmp_path / "c"))
    cli(capsys, "classgroup", "quad:-23")
    assert list((tmp_path / "c").glob("*.json"))


def test_console_entry_point(tmp_path):
    env = {**os.environ, "QM_SIEVE_CACHE": str(tmp_path)}
    r = subprocess.run([sys.executable, "-m", "qmsieve", "nlcm", "realquad:5"], capture_output=True, text=True, env=env)
    assert (r.returncode, r.stdout) == (0, "60\n")
    r = subprocess.run([sys.executable, "-m", "qmsieve", "nlcm", "realquad:4"], capture_output=True, text=True, env=env)
    assert r.returncode == 2 and "error" in r.stderr
