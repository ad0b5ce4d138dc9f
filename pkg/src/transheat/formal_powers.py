"""Recurrent integrals and the formal powers associated with a particular solution."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .gridfn import (
    GridFunction,
    antiderivative_from_zero,
    chebyshev_coefficients,
    differentiate,
    evaluate_series,
)

# Weight entering the n-th integral, keyed by the parity of n:
#   X^(n)       uses (f^2)^((-1)^n):      f^2 for even n, f^-2 for odd n
#   Xtilde^(n)  uses (f^2)^((-1)^(n-1)):  f^-2 for even n, f^2 for odd n
_WEIGHT = {
    "X": {0: "f_squared", 1: "f_inv_squared"},
    "Xtilde": {0: "f_inv_squared", 1: "f_squared"},
}


def recurrent_integrals(ps, K):
    """Return ``(X, Xtilde)``, each a list ``[X^(0), ..., X^(K)]`` of grid functions."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    one = GridFunction(ps.grid, np.ones(ps.grid.m, dtype=ps.f.values.dtype))
    X, Xt = [one], [one]
    for n in range(1, K + 1):
        wx = getattr(ps, _WEIGHT["X"][n % 2])
        wt = getattr(ps, _WEIGHT["Xtilde"][n % 2])
        X.append(n * antiderivative_from_zero(X[-1] * wx))
        Xt.append(n * antiderivative_from_zero(Xt[-1] * wt))
    return X, Xt


@dataclass(frozen=True, eq=False)
class FormalPowersBasis:
    ps: object
    K: int
    phi: tuple
    X: tuple
    Xtilde: tuple
    phi_prime: tuple = ()

    @property
    def grid(self):
        return self.ps.grid

    @property
    def alpha(self):
        return self.ps.alpha

    @cached_property
    def samples(self):
        """Node samples of ``phi_0..phi_K`` as an ``(m, K+1)`` array."""
        a = np.column_stack([p.values for p in self.phi])
        a.setflags(write=False)
        return a

    @cached_property
    def first_derivative_samples(self):
        if self.phi_prime:
            a = np.column_stack([p.values for p in self.phi_prime])
        else:
            a = np.column_stack([differentiate(p).values for p in self.phi])
        a.setflags(write=False)
        return a

    @cached_property
    def second_derivative_samples(self):
        """``phi_k''`` by one Chebyshev differentiation of the exact ``phi_k'``.

        Differentiating ``phi_k`` twice amplifies round-off roughly like
        ``m^4``; starting from ``phi_k'`` it grows only like ``m^2``.
        """
        if self.phi_prime:
            a = np.column_stack([differentiate(p).values for p in self.phi_prime])
        else:
            a = np.column_stack([differentiate(p, 2).values for p in self.phi])
        a.setflags(write=False)
        return a

    def evaluate(self, x, upto=None, derivative=0):
        """Values of ``phi_0..phi_upto`` (or their derivatives of order 1 or 2) at points ``x``.

        Returns an array of shape ``(len(x), upto + 1)``.
        """
        upto = self.K if upto is None else upto
        if upto > self.K:
            raise IndexError(f"formal powers only built up to K = {self.K}")
        if derivative not in (0, 1, 2):
            raise ValueError("derivative must be 0, 1 or 2")
        S, C = self._tables[derivative]
        return evaluate_series(self.grid, C[:, : upto + 1], S[:, : upto + 1], x)

    @cached_property
    def _tables(self):
        out = {}
        for d, S in enumerate((self.samples, self.first_derivative_samples,
                               self.second_derivative_samples)):
            C = np.column_stack([chebyshev_coefficients(S[:, k]) for k in range(self.K + 1)])
            out[d] = (S, C)
        return out

    def to_csv(self, path):
        """Write node samples as ``x, re_phi_k, im_phi_k`` column triples."""
        header = ["x"]
        for k in range(self.K + 1):
            header += [f"re_phi_{k}", f"im_phi_{k}"]
        S = self.samples
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for i, x in enumerate(self.grid.nodes):
                row = [repr(float(x))]
                for k in range(self.K + 1):
                    z = complex(S[i, k])
                    row += [repr(z.real), repr(z.imag)]
                w.writerow(row)


def formal_powers(ps, K):
    X, Xt = recurrent_integrals(ps, K)
    phi, dphi = [], []
    for k in range(K + 1):
        # phi_k = f Y_k with Y = X for odd k, Xtilde for even k; Y_k' is the integrand
        Y, name = (X, "X") if k % 2 else (Xt, "Xtilde")
        dY = k * Y[k - 1] * getattr(ps, _WEIGHT[name][k % 2]) if k else 0.0 * Y[0]
        phi.append(ps.f * Y[k])
        dphi.append(ps.f_prime * Y[k] + ps.f * dY)
    return FormalPowersBasis(ps=ps, K=K, phi=tuple(phi), X=tuple(X), Xtilde=tuple(Xt),
                             phi_prime=tuple(dphi))


def alpha_corrected_power(basis, j):
    """``phi_{2j} - alpha/(2j+1) phi_{2j+1}``: the even formal power generated by ``g``
    with ``g(0) = 1``, ``g'(0) = 0``."""
    if 2 * j + 1 > basis.K:
        raise IndexError(f"need K >= {2 * j + 1}, basis has K = {basis.K}")
    return basis.phi[2 * j] - (basis.alpha / (2 * j + 1)) * basis.phi[2 * j + 1]
