"""Crank--Nicolson reference solver for the initial-Dirichlet problem."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .collocation import _call, write_mesh_csv
from .exceptions import DomainError, SingularSystemError

PIVOT_GUARD = 1e-12


def thomas_factor(lower, diag, upper, guard=PIVOT_GUARD):
    """Forward-eliminate a tridiagonal matrix without pivoting.

    ``lower[i]`` multiplies unknown ``i`` in row ``i + 1`` and ``upper[i]``
    multiplies unknown ``i + 1`` in row ``i``. Returns ``(lower, pivots,
    ratios)`` for :func:`thomas_solve`.
    """
    n = len(diag)
    dtype = np.result_type(lower, diag, upper)
    piv = np.empty(n, dtype=dtype)
    ratio = np.empty(max(n - 1, 0), dtype=dtype)
    piv[0] = diag[0]
    for i in range(1, n):
        if abs(piv[i - 1]) < guard:
            raise SingularSystemError(f"pivot {i - 1} has magnitude {abs(piv[i - 1]):.3g}")
        ratio[i - 1] = upper[i - 1] / piv[i - 1]
        piv[i] = diag[i] - lower[i - 1] * ratio[i - 1]
    if abs(piv[-1]) < guard:
        raise SingularSystemError(f"pivot {n - 1} has magnitude {abs(piv[-1]):.3g}")
    return np.asarray(lower, dtype=dtype), piv, ratio


def thomas_solve(factor, d):
    lower, piv, ratio = factor
    n = len(piv)
    g = np.empty(n, dtype=np.result_type(piv, d))
    g[0] = d[0] / piv[0]
    for i in range(1, n):
        g[i] = (d[i] - lower[i - 1] * g[i - 1]) / piv[i]
    for i in range(n - 2, -1, -1):
        g[i] -= ratio[i] * g[i + 1]
    return g


def thomas(lower, diag, upper, d):
    return thomas_solve(thomas_factor(lower, diag, upper), d)


@dataclass(frozen=True, eq=False)
class FDMesh:
    """Finite-difference solution; ``values[i, n]`` approximates ``u(x_i, t_n)``."""

    x: np.ndarray
    t: np.ndarray
    values: np.ndarray

    @property
    def nx(self):
        return len(self.x) - 1

    @property
    def nt(self):
        return len(self.t) - 1

    @property
    def dx(self):
        return self.x[1] - self.x[0]

    @property
    def dt(self):
        return self.t[1] - self.t[0]

    def max_error(self, exact):
        xx, tt = np.meshgrid(self.x, self.t, indexing="ij")
        return float(np.max(np.abs(self.values - exact(xx, tt))))

    def to_csv(self, path, exact=None):
        vals = self.values.T
        if exact is None:
            write_mesh_csv(path, self.x, self.t, vals)
            return
        xx, tt = np.meshgrid(self.x, self.t)
        ref = np.asarray(exact(xx, tt))
        abs_err = np.abs(vals - ref)
        write_mesh_csv(path, self.x, self.t, vals, abs_err, abs_err / np.maximum(np.abs(ref), 1e-300))


def crank_nicolson(problem, nx, nt):
    """Solve ``u_t = u_xx - q u`` with second-order differences and trapezoidal stepping."""
    if nx < 4 or nt < 4:
        raise DomainError("need nx >= 4 and nt >= 4")
    b, tau = problem.b, problem.tau
    x = np.linspace(-b, b, nx + 1)
    t = np.linspace(0.0, tau, nt + 1)
    dx, dt = x[1] - x[0], t[1] - t[0]
    qi = np.asarray(_call(problem.q, x[1:-1]))
    left = np.asarray(_call(problem.psi1, t))
    right = np.asarray(_call(problem.psi2, t))
    u0 = np.asarray(_call(problem.phi, x))
    dtype = np.result_type(qi, left, right, u0, float)

    r = 0.5 * dt / dx**2
    h = 0.5 * dt
    n = nx - 1
    off = np.full(n - 1, -r, dtype=dtype)
    factor = thomas_factor(off, 1 + 2 * r + h * qi, off)
    explicit_diag = 1 - 2 * r - h * qi

    U = np.empty((nx + 1, nt + 1), dtype=dtype)
    U[:, 0] = u0
    U[0, 1:] = left[1:]
    U[-1, 1:] = right[1:]
    for k in range(nt):
        prev = U[:, k]
        rhs = explicit_diag * prev[1:-1] + r * (prev[:-2] + prev[2:])
        rhs[0] += r * U[0, k + 1]
        rhs[-1] += r * U[-1, k + 1]
        U[1:-1, k + 1] = thomas_solve(factor, rhs)
    return FDMesh(x, t, U)
