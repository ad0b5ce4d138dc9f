"""Sampled-function calculus on Chebyshev--Gauss--Lobatto grids.

Every x-dependent quantity of the method (the potential, the particular
solution, the recurrent integrals and the formal powers) lives on one grid
over ``[-b, b]``. Values are stored at the nodes and manipulated through the
underlying Chebyshev interpolant: antiderivatives and derivatives go through
Chebyshev coefficients, point evaluation uses the barycentric formula.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from numbers import Number

import numpy as np
from numpy.polynomial import chebyshev as cheb
from scipy.fft import dct

from .exceptions import DomainError, NonvanishingViolation

MIN_NODES = 16
DEFAULT_NODES = 257
EPS_NONVANISHING = 1e-10


def _readonly(a):
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


def chebyshev_nodes(b, m):
    """Return the ``m`` Chebyshev--Gauss--Lobatto points of ``[-b, b]`` in increasing order.

    The sine form keeps the set exactly symmetric, so the midpoint of an
    odd-sized grid is exactly zero.
    """
    if m < 2:
        raise DomainError(f"need at least 2 nodes, got {m}")
    k = np.arange(m)
    return b * np.sin(np.pi * (2 * k - (m - 1)) / (2 * (m - 1)))


@dataclass(frozen=True, eq=False)
class Grid:
    b: float
    m: int
    nodes: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", _readonly(self.nodes))

    @property
    def weights(self):
        """Barycentric weights of the CGL nodes (common scale factor dropped)."""
        w = (-1.0) ** np.arange(self.m)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w

    def index_of_zero(self):
        """Index of the node at the origin (odd ``m`` only), else ``None``."""
        hits = np.flatnonzero(self.nodes == 0.0)
        return int(hits[0]) if hits.size else None


def chebyshev_grid(b, m=DEFAULT_NODES):
    if not b > 0:
        raise DomainError(f"half-width b must be positive, got {b}")
    if m < MIN_NODES:
        raise DomainError(f"grid needs at least {MIN_NODES} nodes, got {m}")
    return Grid(float(b), int(m), chebyshev_nodes(float(b), int(m)))


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples of a (possibly complex) function at the nodes of ``grid``."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape != (self.grid.m,):
            raise ValueError(f"expected {self.grid.m} samples, got shape {v.shape}")
        object.__setattr__(self, "values", _readonly(v))

    # -- arithmetic ---------------------------------------------------------
    def _other(self, other):
        if isinstance(other, GridFunction):
            if other.grid is not self.grid and not (
                other.grid.m == self.grid.m and other.grid.b == self.grid.b
            ):
                raise ValueError("grid functions live on different grids")
            return other.values
        if isinstance(other, Number):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GridFunction(self.grid, self.values + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GridFunction(self.grid, self.values - o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GridFunction(self.grid, o - self.values)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return GridFunction(self.grid, self.values * o)

    __rmul__ = __mul__

    def __neg__(self):
        return GridFunction(self.grid, -self.values)

    def __call__(self, x):
        return interpolate(self, x)

    @property
    def is_real(self):
        return not np.iscomplexobj(self.values) or not np.any(self.values.imag)

    def sup_norm(self):
        return float(np.max(np.abs(self.values)))

    def at_zero(self):
        """Value at the origin, exact when the origin is a node."""
        i = self.grid.index_of_zero()
        if i is not None:
            return self.values[i]
        return interpolate(self, 0.0)

    def coefficients(self):
        return chebyshev_coefficients(self.values)


def sample(fn, grid):
    """Sample ``fn`` at the nodes of ``grid``.

    ``fn`` should accept an array; scalar results are broadcast, so constant
    functions such as ``lambda x: 1.0`` work too.
    """
    v = np.asarray(fn(grid.nodes))
    if v.ndim == 0:
        v = np.full(grid.m, v[()], dtype=v.dtype)
    return GridFunction(grid, np.broadcast_to(v, (grid.m,)))


def chebyshev_coefficients(values):
    """Chebyshev coefficients of the interpolant through CGL samples (increasing nodes)."""
    v = np.asarray(values)[::-1]
    n = v.shape[0] - 1
    c = dct(v, type=1) / n
    c[0] /= 2
    c[-1] /= 2
    return c


def _eval_coefficients(coef, grid):
    return cheb.chebval(grid.nodes / grid.b, coef)


def antiderivative_from_zero(g):
    """Return ``G(x) = integral of g from 0 to x`` sampled on the same grid.

    The Chebyshev series of ``g`` is integrated term by term, so the result
    is exact for polynomial data of degree up to ``m - 2``.
    """
    grid = g.grid
    coef = cheb.chebint(g.coefficients(), lbnd=0.0, scl=grid.b)
    return GridFunction(grid, _eval_coefficients(coef, grid))


def differentiate(g, order=1):
    """Chebyshev (spectral) derivative of ``g`` of the given order."""
    grid = g.grid
    coef = cheb.chebder(g.coefficients(), m=order, scl=1.0 / grid.b)
    return GridFunction(grid, _eval_coefficients(coef, grid))


def add(g, h):
    return g + h


def mul(g, h):
    return g * h


def scale(g, c):
    return g * c


def square(g):
    return GridFunction(g.grid, g.values * g.values)


def reciprocal(g, eps=EPS_NONVANISHING):
    smallest = float(np.min(np.abs(g.values)))
    if not smallest > eps:
        raise NonvanishingViolation(
            f"cannot invert a function with min |g| = {smallest:.3g} <= {eps:g} on the grid"
        )
    return GridFunction(g.grid, 1.0 / g.values)


def _check_domain(grid, x):
    tol = 1e-12 * grid.b
    outside = np.abs(x) > grid.b + tol
    if np.any(outside):
        raise DomainError(f"x = {x[outside][0]!r} lies outside [-{grid.b}, {grid.b}]")


def evaluate_series(grid, coef, samples, x):
    """Evaluate Chebyshev series column-wise at ``x`` by Clenshaw recurrence.

    ``coef`` and ``samples`` are ``(m, k)`` arrays describing the same ``k``
    functions; rows of the result for points that coincide with a node are
    copied from ``samples``. Compared with the barycentric form the rounding
    error varies smoothly in ``x``, which keeps finite differences of the
    result clean. Returns an array of shape ``(len(x), k)``.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    _check_domain(grid, x)
    out = cheb.chebval(np.clip(x / grid.b, -1.0, 1.0), coef).T
    idx = np.searchsorted(grid.nodes, x).clip(0, grid.m - 1)
    hit = grid.nodes[idx] == x
    if hit.any():
        out[hit] = samples[idx[hit]]
    return out


def interpolation_matrix(grid, x):
    """Rows of barycentric weights mapping node samples to values at ``x``.

    Rows for points that coincide with a node select that node exactly.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    _check_domain(grid, x)
    diff = x[:, None] - grid.nodes[None, :]
    hit = diff == 0.0
    diff[hit] = 1.0
    W = grid.weights / diff
    W /= W.sum(axis=1, keepdims=True)
    rows = np.flatnonzero(hit.any(axis=1))
    if rows.size:
        W[rows] = hit[rows].astype(float)
    return W


def interpolate(g, x):
    """Barycentric Chebyshev interpolation of ``g`` at ``x`` (scalar or array)."""
    scalar = np.ndim(x) == 0
    out = interpolation_matrix(g.grid, x) @ g.values
    return out[0] if scalar else out
