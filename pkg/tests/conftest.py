import numpy as np
import pytest
from scipy.interpolate import CubicSpline

from transheat.collocation import IBVProblem
from transheat.fdm import crank_nicolson

ACCEPTANCE_LINES = []


def example1_exact(x, t):
    return np.exp(-0.5 * np.asarray(x) ** 2 - np.asarray(t))


def example1_problem():
    edge = lambda t: np.exp(-0.5 - np.asarray(t))  # noqa: E731
    return IBVProblem(
        b=1.0,
        tau=1.0,
        q=lambda x: np.asarray(x) ** 2,
        phi=lambda x: np.exp(-0.5 * np.asarray(x) ** 2),
        psi1=edge,
        psi2=edge,
        exact=example1_exact,
    )


def quadratic_problem():
    """q = 0 with exact solution x^2 + 2t."""
    return IBVProblem(
        b=1.0,
        tau=1.0,
        q=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        phi=lambda x: np.asarray(x) ** 2,
        psi1=lambda t: 1 + 2 * np.asarray(t),
        psi2=lambda t: 1 + 2 * np.asarray(t),
        exact=lambda x, t: np.asarray(x) ** 2 + 2 * np.asarray(t),
    )


def _ones(v):
    return np.ones_like(np.asarray(v, dtype=float))


def cosine_problem(nx=800, nt=800):
    """q = cos x, u(x, 0) = 1 on [-1, 1], lateral data from a wider run.

    Crank-Nicolson on [-2, 2] with constant data 1 supplies the traces at
    x = +-1, which are smooth and compatible to every order with u(x, 0) = 1.
    The resulting problem has no closed-form solution. The wider run uses
    the same step sizes as an ``nx x nt`` run on [-1, 1].
    """
    wide = crank_nicolson(IBVProblem(2.0, 1.0, np.cos, _ones, _ones, _ones), 2 * nx, nt)
    i = int(np.argmin(np.abs(wide.x + 1)))
    j = int(np.argmin(np.abs(wide.x - 1)))
    psi1 = CubicSpline(wide.t, wide.values[i].real)
    psi2 = CubicSpline(wide.t, wide.values[j].real)
    return IBVProblem(1.0, 1.0, np.cos, _ones, psi1, psi2)


@pytest.fixture(scope="session")
def example1():
    return example1_problem()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
