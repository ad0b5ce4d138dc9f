import shutil
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from transheat.cli import EXIT_COMPAT, EXIT_OK, EXIT_PARSE, EXIT_SOLVER, main, sci

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def run(tmp_path, *args):
    return main([*args, "--out", str(tmp_path)])


def summary(path):
    out = {}
    for line in (path / "summary.txt").read_text().splitlines():
        k, v = line.split(" = ")
        out[k] = v
    return out


def test_sci():
    assert sci(0.000123456) == "1.23e-04"
    assert sci(None) == "nan"


def test_solve_quadratic(tmp_path, capsys):
    assert run(tmp_path, "solve", str(PROBLEMS / "quadratic.ini")) == EXIT_OK
    s = summary(tmp_path)
    assert float(s["max_abs_error"]) <= 1e-11
    assert s["N"] == "5" and s["M"] == "6"
    assert "max_abs_error" in capsys.readouterr().out
    data = np.loadtxt(tmp_path / "mesh.csv", delimiter=",", skiprows=1)
    assert data.shape[1] >= 3 and len(data) > 100


def test_solve_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert run(d, "solve", str(PROBLEMS / "example1.ini")) == EXIT_OK
    for name in ("mesh.csv", "summary.txt"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_table(tmp_path, capsys):
    assert run(tmp_path, "table", str(PROBLEMS / "example1.ini"), "--N", "5,10,15,20") == EXIT_OK
    rows = np.genfromtxt(tmp_path / "table.csv", delimiter=",", names=True)
    assert list(rows["N"]) == [5, 10, 15, 20]
    assert np.all(np.diff(rows["max_abs"]) < 0)
    assert np.all(np.diff(rows["cond"]) > 0)
    assert capsys.readouterr().out.splitlines()[0].split() == ["N", "max_abs", "max_rel", "cond"]


def test_cauchy(tmp_path):
    assert run(tmp_path, "cauchy", str(PROBLEMS / "cauchy_example1.ini")) == EXIT_OK
    assert float(summary(tmp_path)["max_abs_error"]) < 1e-10
    assert (tmp_path / "cauchy.csv").exists()


def test_oracle(tmp_path):
    src = (PROBLEMS / "quadratic.ini").read_text()
    src = src.replace("[solver]", "[solver]\noracle_nx = 100\noracle_nt = 100")
    f = tmp_path / "q.ini"
    f.write_text(src)
    assert run(tmp_path, "oracle", str(f)) == EXIT_OK
    s = summary(tmp_path)
    # x^2 + 2t is reproduced exactly by central differences
    assert float(s["fdm_max_abs_error"]) < 1e-10
    assert float(s["max_collocation_vs_fdm"]) < 1e-10
    assert (tmp_path / "oracle.csv").exists()


def test_incompatible_exit_code(tmp_path, capsys):
    assert run(tmp_path, "solve", str(PROBLEMS / "incompatible.ini")) == EXIT_COMPAT
    assert "incompatible" in capsys.readouterr().err


@pytest.mark.parametrize("command, file", [("solve", "cauchy_example1.ini"),
                                           ("cauchy", "example1.ini")])
def test_wrong_kind(tmp_path, command, file):
    assert run(tmp_path, command, str(PROBLEMS / file)) == EXIT_PARSE


def test_parse_error(tmp_path, capsys):
    f = tmp_path / "bad.ini"
    f.write_text("[problem]\nb = 1\ntau = 1\nphi = x +\npsi1 = 1\npsi2 = 1\n")
    assert run(tmp_path, "solve", str(f)) == EXIT_PARSE
    assert "input error" in capsys.readouterr().err
    assert run(tmp_path, "solve", str(tmp_path / "missing.ini")) == EXIT_PARSE


def test_solver_failure(tmp_path, capsys):
    # with alpha = 0 the particular solution is cos(pi x / 2), which vanishes at x = +-1
    f = tmp_path / "vanish.ini"
    f.write_text("[problem]\nb = 1\ntau = 1\nq = -2.4674011002723395\nphi = 1\npsi1 = 1\npsi2 = 1\n"
                 "[solver]\nalpha = 0\n")
    assert run(tmp_path, "solve", str(f)) == EXIT_SOLVER
    assert "solver failure" in capsys.readouterr().err


@pytest.mark.skipif(shutil.which("transheat") is None, reason="console script not installed")
def test_console_script(tmp_path):
    res = subprocess.run(["transheat", "solve", str(PROBLEMS / "quadratic.ini"), "--out",
                          str(tmp_path)], capture_output=True, text=True)
    assert res.returncode == 0, res.stderr


def test_module_entry(tmp_path):
    res = subprocess.run([sys.executable, "-m", "transheat.cli", "solve",
                          str(PROBLEMS / "incompatible.ini"), "--out", str(tmp_path)],
                         capture_output=True, text=True)
    assert res.returncode == EXIT_COMPAT
