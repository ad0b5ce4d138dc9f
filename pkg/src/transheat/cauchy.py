"""Series solution of the noncharacteristic Cauchy problem.

Given ``u(0, t) = F(t)`` and ``u_x(0, t) = G(t)``,

    u(x, t) = sum_j  F^(j)(t)/(2j)! * psi_{2j}(x) + G^(j)(t)/(2j+1)! * phi_{2j+1}(x),

where ``psi_{2j} = phi_{2j} - alpha/(2j+1) phi_{2j+1}``. Convergence is
guaranteed for ``|x| < b`` when ``F`` and ``G`` lie in a Holmgren class;
that is the caller's responsibility.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Callable

import numpy as np

from .exceptions import DomainError
from .formal_powers import alpha_corrected_power
from .gridfn import interpolation_matrix


@dataclass(frozen=True)
class CauchyProblem:
    """``F_derivs(j, t)`` and ``G_derivs(j, t)`` return the j-th derivatives of the data."""

    F_derivs: Callable
    G_derivs: Callable
    tau: float
    J: int

    def __post_init__(self):
        if self.J < 0:
            raise DomainError("truncation order J must be nonnegative")
        if not self.tau > 0:
            raise DomainError("tau must be positive")


@dataclass(frozen=True)
class CauchyValue:
    value: np.ndarray
    tail: np.ndarray


def cauchy_solution(problem, basis, x, t):
    """Partial sum through ``j = J`` at ``(x, t)``; arrays broadcast.

    Returns a :class:`CauchyValue` whose ``tail`` is the magnitude of the
    last (j = J) term, a rough indicator of truncation error.
    """
    J = problem.J
    if basis.K < 2 * J + 1:
        raise IndexError(f"need formal powers up to {2 * J + 1}, basis has K = {basis.K}")
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    if np.any(np.abs(t) >= problem.tau):
        raise DomainError(f"|t| must stay below tau = {problem.tau}")
    shape = x.shape
    xs, ts = x.ravel(), t.ravel()

    W = interpolation_matrix(basis.grid, xs)
    even = np.column_stack([alpha_corrected_power(basis, j).values for j in range(J + 1)])
    odd = basis.samples[:, 1 : 2 * J + 2 : 2]
    E = W @ even
    O = W @ odd

    total = np.zeros(xs.size, dtype=complex)
    term = np.zeros(xs.size, dtype=complex)
    for j in range(J + 1):
        Fj = np.asarray(problem.F_derivs(j, ts))
        Gj = np.asarray(problem.G_derivs(j, ts))
        term = Fj / factorial(2 * j) * E[:, j] + Gj / factorial(2 * j + 1) * O[:, j]
        total += term
    if not np.any(total.imag):
        total = total.real
    return CauchyValue(total.reshape(shape), np.abs(term).reshape(shape))
