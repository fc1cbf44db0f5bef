import subprocess
import sys

import pytest

from cdgraded.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_normalize_z2_3(capsys):
    code, out, _ = run(capsys, "normalize", "--grading", "z2_3", "--expr",
                       "(x1:(1,0,0) * (x2:(0,1,0) * x3:(0,0,1)))", "--trace")
    assert code == 0
    assert out.splitlines()[0] == "-((x1:(1,0,0) * x2:(0,1,0)) * x3:(0,0,1))"
    assert all(" @ " in line for line in out.splitlines()[1:])


def test_normalize_z2_2(capsys):
    code, out, _ = run(capsys, "normalize", "--grading", "z2_2", "--expr", "(x3:(1,0) * (x2:(0,1) * x1:(0,0)))")
    assert code == 0 and out.strip() == "-(x1:(0,0) * (x2:(0,1) * x3:(1,0)))"
    code, _, err = run(capsys, "normalize", "--grading", "z2_2", "--budget", "0",
                       "--expr", "(x3:(1,0) * (x2:(0,1) * x1:(0,0)))")
    assert code == 1 and "budget" in err


def test_check_identity(capsys):
    code, out, _ = run(capsys, "check-identity", "--grading", "z2_2",
                       "--expr", "(x1:(1,0) * x2:(0,1)) + (x2:(0,1) * x1:(1,0))")
    assert code == 0 and out.startswith("identity")
    code, out, _ = run(capsys, "check-identity", "--grading", "z2_2",
                       "--expr", "(x1:(1,0) * x2:(1,0)) - (x2:(1,0) * x1:(1,0))")
    assert code == 1 and "->" in out


def test_usage_errors(capsys):
    assert run(capsys, "check-identity", "--expr", "x1:(1,0) * x2:(0,1) * x3:(1,1)")[0] == 2
    assert run(capsys, "check-identity", "--grading", "z2_3", "--expr", "x1:(1,0)")[0] == 2
    assert run(capsys, "member", "--gens", "nope", "--expr", "x1:(1,0)")[0] == 2
    assert run(capsys, "certify", "--max-degree", "5")[0] == 2
    assert run(capsys, "mult-table", "--algebra", "/nonexistent")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_algebra_config(tmp_path, capsys):
    cfg = tmp_path / "alg.cfg"
    cfg.write_text("# quaternions\nrank=2\nalpha1=1\nalpha2=-1\n")
    code, out, _ = run(capsys, "mult-table", "--algebra", str(cfg))
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split("\t")[0] == "*" and len(lines) == 5
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour=blue\n")
    assert run(capsys, "mult-table", "--algebra", str(bad))[0] == 2


def test_mult_table_pretty(capsys):
    code, out, _ = run(capsys, "mult-table", "--grading", "z2_3", "--pretty")
    assert code == 0 and "---" in out.splitlines()[1]
    assert len(out.splitlines()) == 10


def test_member(capsys):
    code, out, _ = run(capsys, "member", "--expr", "(x1:(1,0) * x2:(0,1)) + (x2:(0,1) * x1:(1,0))")
    assert (code, out.strip()) == (0, "member")
    code, out, _ = run(capsys, "member", "--expr", "(x1:(1,0) * x2:(0,1))")
    assert (code, out.strip()) == (1, "not a member")
    f = "(x2:(0,1) * (x1:(1,0) * x3:(1,1))) + (x1:(1,0) * (x2:(0,1) * x3:(1,1)))"
    assert run(capsys, "member", "--expr", f)[0] == 1
    assert run(capsys, "member", "--gens", "I+derived", "--expr", f)[0] == 0


def test_certify(tmp_path, capsys):
    out_file = tmp_path / "cert.tsv"
    code, out, _ = run(capsys, "certify", "--grading", "z2_3", "--max-degree", "2", "--out", str(out_file))
    assert code == 0
    assert out == out_file.read_text()
    assert out.splitlines()[0] == "grades\tdim_ambient\tdim_cons\tdim_id\tequal"
    assert len(out.splitlines()) == 1 + 8 + 64


def test_derive_m2(capsys):
    code, out, _ = run(capsys, "derive-m2")
    assert code == 0 and "6*" in out and "quaternion" in out


def test_deterministic_and_entry_point():
    argv = ["certify", "--grading", "z2_2", "--max-degree", "2"]
    a = subprocess.run([sys.executable, "-m", "cdgraded.cli", *argv], capture_output=True, text=True)
    b = subprocess.run([sys.executable, "-m", "cdgraded.cli", *argv], capture_output=True, text=True)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout
