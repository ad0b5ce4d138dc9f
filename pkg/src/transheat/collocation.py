"""Initial-Dirichlet problems solved by collocation on the parabolic boundary."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .estimator import DEFAULT_RCOND, TransmutedHeatRegressor
from .exceptions import CompatibilityError, DomainError
from .gridfn import DEFAULT_NODES

LEFT, BOTTOM, RIGHT = "left", "bottom", "right"
COMPAT_TOL = 1e-10
REL_ERR_GUARD = 1e-300


def _call(fn, v):
    v = np.asarray(v, dtype=float)
    out = np.asarray(fn(v))
    return np.broadcast_to(out, v.shape) if out.shape != v.shape else out


@dataclass(frozen=True, eq=False)
class IBVProblem:
    """``u_xx - q u = u_t`` on ``(-b, b) x (0, tau)`` with Dirichlet and initial data.

    All data are vectorized callables: ``q``, ``phi`` of x; ``psi1``, ``psi2``
    of t; ``exact`` (optional) of ``(x, t)``.
    """

    b: float
    tau: float
    q: Callable
    phi: Callable
    psi1: Callable
    psi2: Callable
    exact: Optional[Callable] = None
    compat_tol: float = COMPAT_TOL

    def __post_init__(self):
        if not self.b > 0 or not self.tau > 0:
            raise DomainError("b and tau must be positive")
        left = abs(complex(_call(self.psi1, 0.0)) - complex(_call(self.phi, -self.b)))
        right = abs(complex(_call(self.psi2, 0.0)) - complex(_call(self.phi, self.b)))
        if left > self.compat_tol or right > self.compat_tol:
            raise CompatibilityError(
                f"corner mismatch: |psi1(0) - phi(-b)| = {left:.3g}, "
                f"|psi2(0) - phi(b)| = {right:.3g} (tolerance {self.compat_tol:g})"
            )

    def boundary_data(self, x, t, segment):
        """Right-hand side for boundary points according to their segment tags."""
        x = np.asarray(x, dtype=float)
        t = np.asarray(t, dtype=float)
        segment = np.asarray(segment)
        out = np.zeros(x.shape, dtype=complex)
        for tag, fn, arg in ((LEFT, self.psi1, t), (BOTTOM, self.phi, x), (RIGHT, self.psi2, t)):
            sel = segment == tag
            if sel.any():
                out[sel] = _call(fn, arg[sel])
        return out.real.copy() if not np.any(out.imag) else out


SPACINGS = ("arclength", "segments")


def _segment_counts(M):
    ns = min(M // 3, (M - 3) // 2)
    return ns, M - 2 * ns


def parabolic_boundary_points(b, tau, M, spacing="arclength"):
    """``M`` points along the parabolic boundary.

    The traversal runs from ``(-b, tau)`` down the left side, across the
    bottom and up the right side to ``(b, tau)``; both ends are included.
    Returns ``(x, t, segment)`` arrays; the bottom corners are tagged
    ``"bottom"``.

    ``spacing="arclength"`` spaces the points equally along the whole path.
    ``spacing="segments"`` puts ``ns = min(M // 3, (M - 3) // 2)`` equally
    spaced points on each side (top corner included) and the remaining
    ``M - 2 ns`` on the bottom (corners included). The balanced split keeps
    the collocation matrix far better posed when ``b`` and ``tau`` differ
    little, which is why :func:`solve_ibvp` uses it by default.
    """
    if M < 3:
        raise DomainError("need at least 3 boundary points")
    if spacing not in SPACINGS:
        raise ValueError(f"spacing must be one of {SPACINGS}, got {spacing!r}")
    b, tau = float(b), float(tau)
    if spacing == "segments":
        ns, nb = _segment_counts(M)
        t_left = np.linspace(tau, 0.0, ns + 1)[:-1]
        x = np.concatenate([np.full(ns, -b), np.linspace(-b, b, nb), np.full(ns, b)])
        t = np.concatenate([t_left, np.zeros(nb), t_left[::-1]])
        seg = np.array([LEFT] * ns + [BOTTOM] * nb + [RIGHT] * ns)
        return x, t, seg

    length = 2 * tau + 2 * b
    s = np.linspace(0.0, length, M)
    snap = 1e-12 * length
    s[np.abs(s - tau) <= snap] = tau
    s[np.abs(s - (tau + 2 * b)) <= snap] = tau + 2 * b

    x = np.empty(M)
    t = np.empty(M)
    seg = np.empty(M, dtype=object)
    left = s < tau
    right = s > tau + 2 * b
    bottom = ~(left | right)
    x[left], t[left], seg[left] = -b, tau - s[left], LEFT
    x[bottom], t[bottom], seg[bottom] = -b + (s[bottom] - tau), 0.0, BOTTOM
    x[right], t[right], seg[right] = b, s[right] - tau - 2 * b, RIGHT
    return x, t, seg.astype(str)


def assemble(problem, basis, N, M, spacing="segments"):
    """Collocation matrix ``A[i, n] = u_n(x_i, t_i)`` and the matching data vector."""
    if basis.N < N:
        raise ValueError(f"basis of order {basis.N} cannot assemble order {N}")
    if M < N + 1:
        raise ValueError("need at least N + 1 collocation points")
    x, t, seg = parabolic_boundary_points(problem.b, problem.tau, M, spacing)
    return basis.design_matrix(x, t, upto=N), problem.boundary_data(x, t, seg)


@dataclass(frozen=True, eq=False)
class CollocationSolution:
    problem: IBVProblem
    N: int
    M: int
    coefficients: np.ndarray
    report: object
    basis: object
    estimator: TransmutedHeatRegressor
    points: tuple
    condition_number: float
    collocation_residual_max: float
    boundary_residual_max: float

    def __call__(self, x, t):
        x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        v = self.estimator.predict(np.column_stack([x.ravel(), t.ravel()]))
        return v.reshape(x.shape)


def _boundary_misfit(problem, estimator, M):
    x, t, seg = parabolic_boundary_points(problem.b, problem.tau, M, "arclength")
    fit = estimator.predict(np.column_stack([x, t]))
    return float(np.max(np.abs(fit - problem.boundary_data(x, t, seg))))


def solve_ibvp(problem, N, M=None, rcond=DEFAULT_RCOND, grid_size=DEFAULT_NODES,
               alpha="auto", equilibrate=True, basis=None, spacing="segments"):
    """Fit ``u ~ sum_{n<=N} a_n u_n`` to the initial and boundary data.

    ``M`` defaults to ``N + 1`` collocation points. ``condition_number`` is
    that of the unscaled collocation matrix; ``boundary_residual_max`` is the
    data misfit on a boundary sampling ten times denser than the collocation
    set. ``spacing`` selects the point layout, see
    :func:`parabolic_boundary_points`.
    """
    M = N + 1 if M is None else M
    est = TransmutedHeatRegressor(q=problem.q, b=problem.b, order=N, grid_size=grid_size,
                                  alpha=alpha, rcond=rcond, equilibrate=equilibrate, basis=basis)
    x, t, seg = parabolic_boundary_points(problem.b, problem.tau, M, spacing)
    rhs = problem.boundary_data(x, t, seg)
    X = np.column_stack([x, t])
    est.fit(X, rhs)
    A = est.features_.transform(X)
    s = np.linalg.svd(A, compute_uv=False)
    cond = float(s[0] / s[-1]) if s[-1] > 0 and A.shape[0] >= A.shape[1] else np.inf
    return CollocationSolution(
        problem=problem,
        N=N,
        M=M,
        coefficients=est.coef_,
        report=est.report_,
        basis=est.basis_,
        estimator=est,
        points=(x, t, seg),
        condition_number=cond,
        collocation_residual_max=float(np.max(np.abs(A @ est.coef_ - rhs))),
        boundary_residual_max=_boundary_misfit(problem, est, 10 * M),
    )


@dataclass(frozen=True, eq=False)
class MeshResult:
    """Values (and errors, when an exact solution is known) on a tensor mesh.

    Arrays are indexed ``[i_t, i_x]``.
    """

    x: np.ndarray
    t: np.ndarray
    values: np.ndarray
    abs_err: Optional[np.ndarray] = None
    rel_err: Optional[np.ndarray] = None

    @property
    def max_abs_error(self):
        return None if self.abs_err is None else float(np.max(self.abs_err))

    @property
    def max_rel_error(self):
        return None if self.rel_err is None else float(np.max(self.rel_err))

    def to_csv(self, path):
        write_mesh_csv(path, self.x, self.t, self.values, self.abs_err, self.rel_err)


def interior_mesh(b, tau, nx, nt):
    """Uniform mesh of ``nx x nt`` points strictly inside ``(-b, b) x (0, tau)``."""
    if nx < 2 or nt < 2:
        raise DomainError("mesh needs at least 2 points per direction")
    return np.linspace(-b, b, nx + 2)[1:-1], np.linspace(0.0, tau, nt + 2)[1:-1]


def mesh_errors(x, t, values, exact):
    xx, tt = np.meshgrid(x, t)
    ref = np.asarray(exact(xx, tt))
    abs_err = np.abs(values - ref)
    rel_err = abs_err / np.maximum(np.abs(ref), REL_ERR_GUARD)
    return abs_err, rel_err


def evaluate_on_mesh(sol, nx=200, nt=100):
    x, t = interior_mesh(sol.problem.b, sol.problem.tau, nx, nt)
    values = sol.estimator.predict_grid(x, t)
    if sol.problem.exact is None:
        return MeshResult(x, t, values)
    return MeshResult(x, t, values, *mesh_errors(x, t, values, sol.problem.exact))


def _fmt(v):
    return repr(float(v))


def write_mesh_csv(path, x, t, values, abs_err=None, rel_err=None):
    """Write ``x,t,re_u,im_u[,abs_err,rel_err]`` rows, t-major then x.

    ``values`` (and the error arrays) are indexed ``[i_t, i_x]``.
    """
    header = ["x", "t", "re_u", "im_u"]
    with_err = abs_err is not None
    if with_err:
        header += ["abs_err", "rel_err"]
    values = np.asarray(values)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for j, tj in enumerate(t):
            for i, xi in enumerate(x):
                z = complex(values[j, i])
                row = [_fmt(xi), _fmt(tj), _fmt(z.real), _fmt(z.imag)]
                if with_err:
                    row += [_fmt(abs_err[j, i]), _fmt(rel_err[j, i])]
                w.writerow(row)
