from pathlib import Path

import numpy as np
import pytest

from transheat.exceptions import CompatibilityError, ParseError
from transheat.problem_file import load, loads, parse_alpha, parse_int_list

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"

MINIMAL = """
[problem]
b = 1
tau = 0.5
phi = 1
psi1 = 1
psi2 = 1
"""


def test_defaults():
    pf = loads(MINIMAL)
    assert pf.kind == "ibvp" and pf.b == 1.0 and pf.tau == 0.5
    s = pf.solver
    assert (s.N, s.M, s.rcond, s.m, s.alpha, s.spacing, s.nx, s.nt) == (
        20, None, None, 257, "auto", "segments", 200, 100)
    assert s.N_list == (5, 10, 15, 20, 26)
    assert pf.out_dir == "."
    problem = pf.ibvp()
    np.testing.assert_array_equal(problem.q(np.array([0.3, 0.4])), [0.0, 0.0])


def test_example_file():
    pf = load(PROBLEMS / "example1.ini")
    assert pf.solver.N == 26 and pf.solver.N_list[-1] == 100
    p = pf.ibvp()
    assert p.exact(0.0, 0.0) == 1.0
    assert p.psi1(0.0) == pytest.approx(np.exp(-0.5))


def test_solver_section():
    pf = loads(MINIMAL + "[solver]\nN = 7\nM = 16\nrcond = 1e-12\nm = 65\nalpha = 0.5+1i\n"
                         "spacing = arclength\n")
    s = pf.solver
    assert (s.N, s.M, s.rcond, s.m, s.alpha, s.spacing) == (7, 16, 1e-12, 65, 0.5 + 1j, "arclength")


def test_cauchy_file():
    pf = load(PROBLEMS / "cauchy_example1.ini")
    assert pf.kind == "cauchy" and pf.J == 15 and pf.r == 0.8
    cp = pf.cauchy()
    assert cp.F_derivs(3, 0.0) == pytest.approx(-1.0)
    assert cp.G_derivs(0, 0.2) == 0.0


def test_incompatible_file():
    with pytest.raises(CompatibilityError):
        load(PROBLEMS / "incompatible.ini").ibvp()


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("no sections here", "malformed"),
        ("[solver]\nN = 3\n", "[problem]"),
        (MINIMAL.replace("b = 1", "b = one"), "'b'"),
        (MINIMAL.replace("phi = 1", "phi = t"), "'phi' may only depend on x"),
        (MINIMAL.replace("phi = 1", "phi = (1"), "in 'phi'"),
        (MINIMAL.replace("phi = 1\n", ""), "missing key 'phi'"),
        (MINIMAL + "kind = parabolic\n", "kind"),
        (MINIMAL + "[solver]\nspacing = random\n", "spacing"),
        (MINIMAL + "[solver]\nalpha = big\n", "alpha"),
        (MINIMAL + "[solver]\nN_list = 5, x\n", "integers"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=None) as info:
        loads(text)
    assert fragment in str(info.value)


def test_expression_error_keeps_offset():
    with pytest.raises(ParseError) as info:
        loads(MINIMAL.replace("phi = 1", "phi = 1 + $"))
    assert info.value.offset == 4


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load(tmp_path / "nope.ini")


def test_helpers():
    assert parse_alpha("real-first") == "real-first"
    assert parse_alpha("2i") == 2j
    assert parse_int_list("5,10, 15") == (5, 10, 15)
