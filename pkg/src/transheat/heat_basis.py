"""Heat polynomials and their transmuted images.

The heat polynomial

    h_n(x, t) = n! sum_{k=0}^{n//2} t^k x^(n-2k) / (k! (n-2k)!)

solves ``h_xx = h_t``. Replacing ``x^j`` by the formal power ``phi_j`` gives
``u_n``, a solution of ``u_xx - q(x) u = u_t``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .formal_powers import FormalPowersBasis, formal_powers
from .spps import nonvanishing_solution

MAX_ORDER = 170


@lru_cache(maxsize=None)
def heat_coefficients(n):
    """Tuple of ``n! / (k! (n-2k)!)`` for ``k = 0..n//2``, by multiplicative recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > MAX_ORDER:
        raise ValueError(f"heat polynomials beyond order {MAX_ORDER} overflow double precision")
    c = [1.0]
    for k in range(n // 2):
        c.append(c[-1] * (n - 2 * k) * (n - 2 * k - 1) / (k + 1))
    return tuple(c)


def heat_polynomial(n, x, t):
    """Evaluate ``h_n(x, t)``; ``x`` and ``t`` broadcast against each other."""
    c = heat_coefficients(n)
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    x2 = x * x
    acc = np.zeros(np.broadcast(x, t).shape)
    tk = np.ones_like(t)
    for ck in c:
        acc = acc * x2 + ck * tk
        tk = tk * t
    if n % 2:
        acc = acc * x
    return acc[()] if acc.ndim == 0 else acc


def _combine(P, t, N, dt=False):
    """Columns ``sum_k c_{n,k} t^k P[:, n-2k]`` (or their t-derivative) for n = 0..N."""
    t = np.asarray(t, dtype=float)
    powers = np.ones((N // 2 + 2, t.size))
    for k in range(1, N // 2 + 2):
        powers[k] = powers[k - 1] * t
    out = np.zeros((t.size, N + 1), dtype=np.result_type(P, float))
    for n in range(N + 1):
        for k, ck in enumerate(heat_coefficients(n)):
            if dt:
                if k == 0:
                    continue
                out[:, n] += (k * ck) * powers[k - 1] * P[:, n - 2 * k]
            else:
                out[:, n] += ck * powers[k] * P[:, n - 2 * k]
    return out


@dataclass(frozen=True, eq=False)
class TransmutedHeatBasis:
    fp: FormalPowersBasis
    N: int

    def __post_init__(self):
        if self.N > self.fp.K:
            raise ValueError(f"basis of order {self.N} needs formal powers up to {self.N}")
        if self.N > MAX_ORDER:
            raise ValueError(f"order {self.N} exceeds {MAX_ORDER}")
        heat_coefficients(self.N)

    @classmethod
    def build(cls, q, N, strategy="auto", tol=None):
        kw = {} if tol is None else {"tol": tol}
        ps = nonvanishing_solution(q, strategy=strategy, **kw)
        return cls(formal_powers(ps, N), N)

    @property
    def b(self):
        return self.fp.grid.b

    @property
    def is_real(self):
        return not np.iscomplexobj(self.fp.samples)

    def _points(self, x, t):
        x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        return x.ravel(), t.ravel(), x.shape

    def design_matrix(self, x, t, upto=None, dt=False, dxx=False):
        """Values ``u_n(x_i, t_i)`` as an ``(npoints, upto+1)`` array.

        With ``dt`` the analytic time derivative is returned, with ``dxx`` the
        second x-derivative built from Chebyshev-differentiated formal powers.
        """
        N = self.N if upto is None else upto
        if N > self.N:
            raise IndexError(f"basis built up to n = {self.N}, asked for {N}")
        xs, ts, _ = self._points(x, t)
        P = self.fp.evaluate(xs, upto=N, derivative=2 if dxx else 0)
        return _combine(P, ts, N, dt=dt)

    def grid_sum(self, coef, x, t):
        """``sum_n coef[n] u_n`` on the tensor grid ``x`` by ``t``, shape ``(len(t), len(x))``.

        Regrouping by powers of t means the formal powers are interpolated
        only once per distinct ``x``.
        """
        coef = np.asarray(coef)
        N = coef.size - 1
        if N > self.N:
            raise IndexError(f"basis built up to n = {self.N}, asked for {N}")
        x = np.asarray(x, dtype=float).ravel()
        t = np.asarray(t, dtype=float).ravel()
        P = self.fp.evaluate(x, upto=N)
        B = np.zeros((N // 2 + 1, N + 1), dtype=np.result_type(coef, P))
        for n in range(N + 1):
            for k, ck in enumerate(heat_coefficients(n)):
                B[k, n - 2 * k] += ck * coef[n]
        T = t[:, None] ** np.arange(N // 2 + 1)
        return T @ (B @ P.T)

    def __call__(self, n, x, t):
        return self.transmuted_heat_polynomial(n, x, t)

    def transmuted_heat_polynomial(self, n, x, t):
        if n > self.N:
            raise IndexError(f"basis built up to n = {self.N}, asked for {n}")
        xs, ts, shape = self._points(x, t)
        P = self.fp.evaluate(xs, upto=n)
        v = np.zeros(xs.size, dtype=P.dtype)
        for k, ck in enumerate(heat_coefficients(n)):
            v += ck * ts**k * P[:, n - 2 * k]
        v = v.reshape(shape)
        return v[()] if v.ndim == 0 else v

    def time_derivative(self, n, x, t):
        xs, ts, shape = self._points(x, t)
        P = self.fp.evaluate(xs, upto=n)
        v = np.zeros(xs.size, dtype=P.dtype)
        for k, ck in enumerate(heat_coefficients(n)):
            if k:
                v += k * ck * ts ** (k - 1) * P[:, n - 2 * k]
        v = v.reshape(shape)
        return v[()] if v.ndim == 0 else v

    def pde_residual(self, n, x, t, q, h=None):
        """``|u_xx - q u - u_t|`` at ``(x, t)``.

        ``u_xx`` comes from a central difference with step ``h`` (default
        ``1e-4 b``), ``u_t`` from differentiating the ``t^k`` factors. ``q`` is
        a callable of x.
        """
        h = 1e-4 * self.b if h is None else h
        x = np.asarray(x, dtype=float)
        u = self.transmuted_heat_polynomial(n, x, t)
        up = self.transmuted_heat_polynomial(n, x + h, t)
        um = self.transmuted_heat_polynomial(n, x - h, t)
        uxx = (up - 2 * u + um) / (h * h)
        ut = self.time_derivative(n, x, t)
        return np.abs(uxx - np.asarray(q(x)) * u - ut)
