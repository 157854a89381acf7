import json
import subprocess
import sys

import pytest

from sparseblock import __version__
from sparseblock.cli import EXIT_CHECK, EXIT_OK, EXIT_USAGE, run


def run_json(argv, capsys):
    assert run(argv + ["--format", "json"]) == EXIT_OK
    return json.loads(capsys.readouterr().out)


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["walks"],
        ["walks", "--order", "3"],
        ["walks", "--order", "0"],
        ["walks", "--order", "x"],
        ["walks", "--order", "4", "--bogus"],
        ["moments", "--model", "nope", "--order", "4"],
        ["simulate", "--n", "1", "--d", "1", "--z", "0", "--order", "2"],
        ["simulate", "--n", "10", "--d", "1", "--z", "-1", "--order", "2"],
        ["transform", "--direction", "m2c", "--input", "/nonexistent/file.json"],
    ],
)
def test_usage_errors_exit_1(argv, capsys):
    assert run(argv) == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_malformed_series_file_exit_1(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"coeffs": [{"power": 0, "poly": [1]}]}')
    assert run(["transform", "--direction", "m2c", "--input", str(bad)]) == EXIT_USAGE
    bad.write_text("not json")
    assert run(["transform", "--direction", "m2c", "--input", str(bad)]) == EXIT_USAGE


def test_budget_exceeded_exit_1():
    assert run(["moments", "--model", "goe-finite", "--order", "12", "--budget", "10"]) == EXIT_USAGE


def test_planar_moment_json(capsys):
    data = run_json(["moments", "--model", "planar", "--order", "8"], capsys)
    assert data["version"] == __version__
    assert data["z_coeffs"] == [14, 62, 56, 14]
    assert data["route"] == "enumeration"


def test_planar_route_switch(capsys):
    data = run_json(["moments", "--model", "planar", "--order", "10", "--enumeration-budget", "8"], capsys)
    assert data["route"] == "transform"


def test_goe_finite_text(capsys):
    assert run(["moments", "--model", "goe-finite", "--order", "4"]) == EXIT_OK
    assert capsys.readouterr().out == "mu_4 = [Z (2 d^2 + 5 d + 5) + Z^2 (2 d^2 + 4 d + 2)] sigma^4\n"


def test_goe_finite_csv(capsys):
    assert run(["moments", "--model", "goe-finite", "--order", "2", "--format", "csv"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ["order,z_power,d_power,coeff", "2,1,0,1", "2,1,1,1"]


def test_rank1_and_semicircle(capsys):
    r1 = run_json(["moments", "--model", "rank1", "--order", "6"], capsys)
    assert r1["moments"][-1] == {"order": 6, "poly": [0, 1, 6, 5]}
    sc = run_json(["moments", "--model", "semicircle-nc", "--order", "6"], capsys)
    assert [m["order"] for m in sc["moments"]] == [2, 4, 6]
    assert sc["moments"][2]["poly"] == [5, 12, 5]


def test_walks_json_and_csv(capsys):
    data = run_json(["walks", "--order", "4"], capsys)
    assert data["version"] == __version__
    assert data["terms"] == [
        {"word": "1 1 1 1", "multiplicity": 1, "h": 1},
        {"word": "1 1 2 2", "multiplicity": 2, "h": 2},
    ]
    assert run(["walks", "--order", "4", "--format", "csv"]) == EXIT_OK
    rows = capsys.readouterr().out.splitlines()
    assert rows == ["order,word,multiplicity,h", "4,1 1 1 1,1,1", "4,1 1 2 2,2,2"]


def test_walks_text(capsys):
    assert run(["walks", "--order", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Z^1" in out and "Z^2" in out


def test_transform_round_trip(tmp_path, capsys):
    src = tmp_path / "f.json"
    src.write_text(json.dumps({"coeffs": [{"power": n, "poly": [1]} for n in range(1, 7)]}))
    out = tmp_path / "a.json"
    assert run(["transform", "--direction", "m2c", "--input", str(src), "--format", "json", "--out", str(out)]) == EXIT_OK
    data = json.loads(out.read_text())
    # moments all one: free cumulants of a point mass at 1
    assert [c["power"] for c in data["coeffs"]] == [1]
    back = tmp_path / "f2.json"
    assert run(["transform", "--direction", "c2m", "--input", str(out), "--format", "json", "--out", str(back)]) == EXIT_OK
    coeffs = json.loads(back.read_text())["coeffs"]
    assert [(c["power"], c["poly"]) for c in coeffs] == [(n, [1]) for n in range(1, 7)]


def test_transform_catalan(tmp_path, capsys):
    src = tmp_path / "a.json"
    src.write_text(json.dumps({"coeffs": [{"power": n, "poly": [1]} for n in range(1, 7)]}))
    data = run_json(["transform", "--direction", "c2m", "--input", str(src)], capsys)
    assert [c["poly"] for c in data["coeffs"]] == [[1], [2], [5], [14], [42], [132]]


def test_simulate_json(tmp_path, capsys):
    report = tmp_path / "mc.json"
    argv = ["simulate", "--n", "40", "--d", "2", "--z", "2", "--order", "4", "--samples", "5", "--json", str(report)]
    assert run(argv) == EXIT_OK
    text = capsys.readouterr().out
    assert "mu_2" in text and "mu_4" in text
    data = json.loads(report.read_text())
    assert data["version"] == __version__
    assert [e["order"] for e in data["estimates"]] == [2, 4]
    assert run(argv[:-2] + ["--threads", "3", "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["estimates"] == data["estimates"]


def test_simulate_allocation_cap(capsys):
    assert run(["simulate", "--n", "100000", "--d", "4", "--z", "1", "--order", "2"]) == EXIT_USAGE


def test_check_passes(capsys):
    assert run(["check"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 8 and "[FAIL]" not in out


def test_check_failure_exit_2(monkeypatch, capsys):
    from sparseblock import checks

    monkeypatch.setattr(checks, "ALL_CHECKS", checks.ALL_CHECKS + (lambda: checks.CheckResult("broken", False),))
    assert run(["check"]) == EXIT_CHECK


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sparseblock", "moments", "--model", "planar", "--order", "4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("mu_4 = ")
    proc = subprocess.run([sys.executable, "-m", "sparseblock", "walks", "--order", "5"], capture_output=True, text=True)
    assert proc.returncode == 1
