import json

import pytest

from orbitkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_orbits_b2(capsys):
    code, out, _ = run(capsys, "orbits", "B2")
    assert code == 0
    assert out.splitlines() == ["(0,0)\t0\t0", "(0,1)\t4\tA1", "(2,0)\t6\t~A1", "(2,2)\t8\tB2"]


def test_fuse_explicit(capsys):
    code, out, _ = run(capsys, "fuse", "--type", "B2", "--sub", "10,-12", "--d", "2,2")
    assert code == 0 and "(2,0)" in out


def test_fuse_signed_subset(capsys):
    code, out, _ = run(capsys, "fuse", "--type", "e8", "--j", "0,2,3,-4,5,6,7,8")
    assert code == 0 and out.split() == ["E8(a5)", "(2,0,0,2,0,0,2,0)"]


def test_fourier_checks(capsys):
    assert run(capsys, "fourier", "--group", "Z2", "--check", "involution")[0] == 0
    code, out, _ = run(capsys, "fourier", "--group", "s3", "--check", "mellin", "--check", "unitary")
    assert code == 0 and out.count("PASS") == 2


def test_fourier_matrix_output(capsys):
    code, out, _ = run(capsys, "fourier", "--group", "S3")
    assert code == 0 and len(out.splitlines()) == 9


def test_model_verify_and_failure(capsys):
    assert run(capsys, "model", "--eps", "-1", "--mu", "4,2", "--verify")[0] == 0
    code, out, _ = run(capsys, "model", "--eps", "1", "--mu", "5,3,1", "--verify", "--naive")
    assert code == 1 and "FAIL\tK2" in out


def test_partitions(capsys):
    code, out, _ = run(capsys, "partitions", "--type", "C", "--n", "8")
    assert code == 0 and len(out.splitlines()) == 14


def test_quasiss(capsys):
    code, out, _ = run(capsys, "quasiss", "--ambient", "E6", "--sub", "2,3,4,5", "--w", "triality", "--t", "w4:1/3")
    assert code == 0
    assert "Sigma_sigma\tG2" in out and "Sigma_tsigma\tA2" in out


def test_verify_tables_single(capsys):
    code, out, _ = run(capsys, "verify-tables", "--table", "2")
    assert code == 0 and "fusion rows: 4/4" in out


@pytest.mark.parametrize("argv", [
    ["bogus"], [], ["orbits"], ["orbits", "X9"], ["fuse", "--type", "B2"],
    ["partitions", "--type", "B", "--n", "8"], ["model", "--eps", "2", "--mu", "1"],
    ["fourier", "--group", "nope"], ["quasiss", "--ambient", "E8", "--sub", "1,3,4,2,5,6 | 8,23465431",
                                     "--torus", "w3:1/2,w5:1/2"],
    ["orbits", "B2", "--jobs", "0"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


@pytest.mark.parametrize("argv", [
    ["orbits", "G2", "--json"],
    ["fuse", "--type", "B2", "--sub", "10,-12", "--d", "2,2", "--json"],
    ["partitions", "--type", "D", "--n", "8", "--json"],
    ["model", "--eps", "-1", "--mu", "4,2", "--verify", "--json"],
    ["model", "--eps", "1", "--mu", "3,1,1", "--dump"],
    ["fourier", "--group", "Z3", "--json"],
    ["quasiss", "--ambient", "E6", "--sub", "2,3,4,5", "--w", "triality", "--json"],
    ["verify-tables", "--table", "3", "--json"],
])
def test_json_round_trip(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    obj = json.loads(out)
    assert json.dumps(obj, indent=2, sort_keys=True) == out.strip()


def test_json_fields(capsys):
    _, out, _ = run(capsys, "fuse", "--type", "B2", "--sub", "10,-12", "--d", "2,2", "--json")
    obj = json.loads(out)
    assert obj["diagram"] == [2, 0] and obj["w"] == [1, 0] and obj["f"] == ["2", "-2", "0", "-2"]


def test_console_script():
    import shutil
    import subprocess
    exe = shutil.which("orbitkit")
    if exe is None:
        pytest.skip("package not installed")
    r = subprocess.run([exe, "orbits", "A2"], capture_output=True, text=True)
    assert r.returncode == 0 and len(r.stdout.splitlines()) == 3
