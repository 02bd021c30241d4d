import json
import subprocess
import sys

import pytest

from klr.cli import EXIT_FAIL, EXIT_INPUT, EXIT_PASS, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


@pytest.mark.parametrize("name,matrix", [
    ("jordan.json", [[0]]),
    ("a2.json", [[2, -1], [-1, 2]]),
    ("two_loop", [[-2]]),
])
def test_datum(capsys, name, matrix):
    code, data = run_json(capsys, "datum", name)
    assert code == EXIT_PASS and data["datum"]["matrix"] == matrix


def test_datum_text(capsys):
    code, out, _ = run(capsys, "datum", "jordan.json")
    assert code == EXIT_PASS and "matrix: [[0]]" in out and "imaginary: i" in out


def test_datum_from_a_path(capsys, tmp_path):
    p = tmp_path / "q.json"
    p.write_text('{"vertices": ["i"], "edges": [{"id": "a", "from": "i", "to": "i"}, {"id": "b", "from": "i", "to": "i"}]}')
    code, data = run_json(capsys, "datum", str(p))
    assert data["datum"]["matrix"] == [[-2]]


@pytest.mark.parametrize("argv", [
    ["datum", "missing.json"],
    ["datum", "/nonexistent/dir/q.json"],
    ["verify", "a1", "--alpha", '{"k": 1}'],
    ["verify", "a1", "--alpha", "{oops"],
    ["verify", "a1", "--alpha", '{"i": 9}'],
    ["verify", "a1", "--alpha", '{"i": 0}'],
    ["gdim", "a2", "--alpha", '{"i": 1, "j": 1}', "--nu-in", "i,i"],
    ["cyclo", "a1", "--alpha", '{"i": 1}', "--lambda", '{"i": -1}'],
    ["cyclo", "a1", "--alpha", '{"i": 1}', "--lambda", '{"i": 1}', "--max-degree", "20"],
])
def test_input_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_INPUT and err.startswith("error:") and out == ""


def test_malformed_quiver_reports_location(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"vertices": ["i"], "edges": [{"id": "a", "from": "i", "to": "z"}]}')
    code, _, err = run(capsys, "datum", str(p))
    assert code == EXIT_INPUT and "$.edges[0].to" in err


def test_verify_jordan_exact(capsys):
    code, data = run_json(capsys, "verify", "jordan.json", "--alpha", '{"i": 2}')
    assert code == EXIT_PASS and data["status"] == "pass"
    assert all(c["failed"] == 0 for c in data["relations"].values())
    assert data["cross_check"]["status"] == "pass"


def test_verify_a2_randomized(capsys):
    code, data = run_json(capsys, "verify", "a2.json", "--alpha", '{"i": 1, "j": 1}',
                          "--backend", "randomized", "--trials", "3", "--seed", "11")
    assert code == EXIT_PASS
    assert data["seed"] == 11 and data["points"] == 3 and 0 < data["failure_bound"] < 1e-10


def test_verify_catches_corrupted_fixture(capsys):
    code, data = run_json(capsys, "verify", "a2_fault.json", "--alpha", '{"i": 1, "j": 1}')
    assert code == EXIT_FAIL and data["status"] == "fail"
    f = data["first_failure"]
    assert f["relation"] == "r2" and f["counterexample"]["difference"]


def test_verify_json_is_deterministic(capsys):
    argv = ["verify", "loop_edge", "--alpha", '{"i": 1, "j": 1}', "--backend", "randomized", "--format", "json"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


@pytest.mark.parametrize("name,alpha,extra", [
    ("a1", {"i": 1}, []),
    ("a2", {"i": 1, "j": 1}, ["--nu-in", "i,j", "--nu-out", "i,j"]),
    ("a1", {"i": 2}, []),
])
def test_gdim(capsys, name, alpha, extra):
    code, data = run_json(capsys, "gdim", name, "--alpha", json.dumps(alpha), *extra)
    assert code == EXIT_PASS and all(b["match"] for b in data["blocks"])
    assert data["seeds"] == [0, 1, 2]


@pytest.mark.parametrize("name,alpha,total", [
    ("a1", {"i": 1}, 1),
    ("a1", {"i": 2}, 0),
    ("jordan", {"i": 1}, 1),
])
def test_cyclo(capsys, name, alpha, total):
    code, data = run_json(capsys, "cyclo", name, "--alpha", json.dumps(alpha), "--lambda", '{"i": 1}')
    assert code == EXIT_PASS and data["total_quotient"] == total and data["stable"]


def test_cyclo_text(capsys):
    code, out, _ = run(capsys, "cyclo", "a1", "--alpha", '{"i": 1}', "--lambda", '{"i": 1}', "--max-degree", "4")
    assert "total quotient: 1" in out and out.rstrip().endswith("PASS")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "klr.cli", "datum", "a1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "matrix: [[2]]" in proc.stdout
