import csv
import io
import json
import subprocess
import sys

import pytest

from minmod.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_derive_ode_json(capsys):
    code, out, _ = call(capsys, "derive-ode", "--nu", "5")
    assert code == 0
    assert json.loads(out)["alphas"] == {"0": "-11/3600"}


def test_derive_ode_cusp(capsys):
    code, out, _ = call(capsys, "derive-ode", "--nu", "13", "--json")
    d = json.loads(out)
    assert code == 0 and d["M"] == 6 and "/" in d["alpha_cusp"]


def test_chars_json_and_csv(capsys):
    code, out, _ = call(capsys, "chars", "--nu", "5", "--s", "2", "--trunc", "8")
    d = json.loads(out)
    assert code == 0 and d["offset"] == "-1/60"
    assert d["coeffs"] == ["1", "1", "1", "1", "2", "2", "3", "3"]
    code, out, _ = call(capsys, "chars", "--nu", "5", "--s", "2", "--trunc", "8", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["exponent", "numerator", "denominator"]
    assert rows[1] == ["-1/60", "1", "1"] and len(rows) == 9


def test_forms(capsys):
    code, out, _ = call(capsys, "forms", "--name", "E4", "--trunc", "4")
    assert code == 0 and json.loads(out)["coeffs"] == ["1", "240", "2160", "6720"]


def test_env_truncation(capsys, monkeypatch):
    monkeypatch.setenv("MINMOD_TRUNC", "5")
    code, out, _ = call(capsys, "forms", "--name", "Delta")
    assert code == 0 and json.loads(out)["trunc"] == 5
    code, out, _ = call(capsys, "forms", "--name", "Delta", "--trunc", "3")
    assert json.loads(out)["trunc"] == 3


def test_hypergeom_negative_k(capsys):
    code, out, _ = call(capsys, "hypergeom", "--k", "-7/10", "--trunc", "40", "--json")
    d = json.loads(out)
    assert code == 0 and d["C"] == "3/5" and d["status"] == "pass"
    assert all(s["residual_zero"] for s in d["solutions"].values())


@pytest.mark.parametrize("argv", [
    ["bogus"], ["chars", "--nu", "4", "--s", "1"], ["chars", "--nu", "5", "--s", "3"],
    ["forms", "--name", "E5"], ["hypergeom", "--k", "1/2"], ["derive-ode", "--nu", "15"],
    ["derive-ode", "--nu", "5", "--format", "csv"], ["verify", "--suite", "ode", "--trunc", "8"],
    ["verify", "--suite", "nope"], ["numeric", "omega-check", "--tau", "1-1i"], [],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = call(capsys, *argv)
    assert code == 2


def test_verify_suite_passes(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code, out, _ = call(capsys, "verify", "--suite", "hypergeom", "--out", str(out_file))
    assert code == 0 and out == ""
    report = json.loads(out_file.read_text())
    assert report["suite"] == "hypergeom"
    assert {"id", "paper_ref", "status", "residual", "detail"} <= set(report["checks"][0])


def test_verify_exit_code_tracks_report(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "numeric")
    report = json.loads(out)
    assert code == (0 if all(c["status"] == "pass" for c in report["checks"]) else 1)


def test_numeric_subcommands(capsys):
    code, out, _ = call(capsys, "numeric", "omega-check", "--tau", "0.3+1.1i")
    assert code == 0 and json.loads(out)["status"] == "pass"
    code, out, _ = call(capsys, "numeric", "integrate", "--from", "1.5i", "--to", "0.9i", "--s", "2")
    assert code == 0 and json.loads(out)["rel_err_one"] < 1e-6
    code, out, _ = call(capsys, "numeric", "smatrix", "--matrix", "symmetric")
    assert code == 0


def test_text_format(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "qseries", "--format", "text")
    assert code == 0 and out.startswith("suite qseries")


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "minmod.cli", "derive-ode", "--nu", "7"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["alphas"]["0"] == "85/74088"
