"""Nonvanishing particular solutions of ``f'' - q f = 0``.

Solutions of the initial value problem are built from the zero-spectral-
parameter power series

    c_0 = y0 + y0' x,    c_{k+1}(x) = int_0^x int_0^s q(r) c_k(r) dr ds,

which converges for every continuous ``q`` on a bounded interval.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, NoConvergence, NonvanishingViolation
from .gridfn import (
    EPS_NONVANISHING,
    GridFunction,
    antiderivative_from_zero,
    reciprocal,
    square,
)

DEFAULT_TOL = 1e-14
MAX_TERMS = 200
# tried in order for complex potentials
COMPLEX_ALPHAS = (1j, 1 + 1j, 2j)


@dataclass(frozen=True, eq=False)
class SeriesSolution:
    y: GridFunction
    dy: GridFunction
    terms_used: int
    tail_estimate: float


@dataclass(frozen=True, eq=False)
class ParticularSolution:
    f: GridFunction
    f_prime: GridFunction
    alpha: complex
    f_squared: GridFunction
    f_inv_squared: GridFunction
    series_terms_used: int
    tail_estimate: float

    @property
    def grid(self):
        return self.f.grid


def solve_ivp_series(q, y0, y0prime, tol=DEFAULT_TOL, max_terms=MAX_TERMS):
    """Solve ``y'' = q y`` with ``y(0) = y0`` and ``y'(0) = y0prime`` on the grid of ``q``.

    Returns a :class:`SeriesSolution`. The series stops once two consecutive
    terms are below ``tol`` relative to the running sum. ``dy`` sums the inner
    integrals, so ``y'`` comes without numerical differentiation. The tail
    estimate extrapolates the last two term norms geometrically; the terms
    decay faster than geometrically, so it errs on the safe side.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    grid = q.grid
    term = GridFunction(grid, y0 + y0prime * grid.nodes)
    total = term
    dtotal = GridFunction(grid, np.full(grid.m, y0prime, dtype=np.result_type(y0prime, float)))
    small = 0
    tail = term.sup_norm()
    for k in range(1, max_terms + 1):
        inner = antiderivative_from_zero(q * term)
        term = antiderivative_from_zero(inner)
        total = total + term
        dtotal = dtotal + inner
        prev, tail = tail, term.sup_norm()
        if tail <= tol * total.sup_norm():
            small += 1
            if small == 2:
                return SeriesSolution(total, dtotal, k + 1, _geometric_tail(prev, tail))
        else:
            small = 0
    raise NoConvergence(f"series did not converge within {max_terms} terms (last term {tail:.3g})")


def _geometric_tail(prev, last):
    r = last / prev if prev > 0 else 0.0
    return last * r / (1 - r) if r < 0.5 else last


def _certify(f, fp, alpha, terms, tail, eps):
    f2 = square(f)
    return ParticularSolution(
        f=f,
        f_prime=fp,
        alpha=complex(alpha),
        f_squared=f2,
        f_inv_squared=reciprocal(f2, eps=eps * eps),
        series_terms_used=terms,
        tail_estimate=tail,
    )


def _check_nonvanishing(f, eps):
    smallest = float(np.min(np.abs(f.values)))
    if not smallest > eps:
        raise NonvanishingViolation(
            f"particular solution vanishes numerically (min |f| = {smallest:.3g}); "
            "retry with a different alpha"
        )


def nonvanishing_solution(q, strategy="auto", tol=DEFAULT_TOL, eps=EPS_NONVANISHING):
    """Particular solution ``f`` with ``f(0) = 1``, ``f'(0) = alpha`` and no zeros on the grid.

    ``strategy`` is one of

    * ``"auto"``: for real ``q`` take ``f = y_c + i y_s`` (``alpha = i``), whose
      real and imaginary parts have unit Wronskian and so never vanish
      together; for complex ``q`` try ``alpha`` in ``(i, 1+i, 2i)``;
    * ``"real-first"``: use the real solution ``y_c`` (``alpha = 0``) when it
      has no zeros on the grid and ``q`` is real, otherwise fall back to
      ``"auto"``;
    * a number: ``f = y_c + alpha y_s`` for that ``alpha``.
    """
    yc = solve_ivp_series(q, 1.0, 0.0, tol=tol)
    ys = solve_ivp_series(q, 0.0, 1.0, tol=tol)
    terms = max(yc.terms_used, ys.terms_used)

    def build(alpha):
        f = yc.y + alpha * ys.y
        _check_nonvanishing(f, eps)
        tail = yc.tail_estimate + abs(alpha) * ys.tail_estimate
        return _certify(f, yc.dy + alpha * ys.dy, alpha, terms, tail, eps)

    if isinstance(strategy, str):
        if strategy == "real-first":
            if q.is_real:
                try:
                    return build(0.0)
                except NonvanishingViolation:
                    pass
            strategy = "auto"
        if strategy != "auto":
            raise ValueError(f"unknown strategy {strategy!r}")
        if q.is_real:
            return build(1j)
        last = None
        for alpha in COMPLEX_ALPHAS:
            try:
                return build(alpha)
            except NonvanishingViolation as exc:
                last = exc
        raise last
    return build(complex(strategy))
