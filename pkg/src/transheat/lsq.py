"""Minimum-norm least squares by truncated SVD."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConvergenceFailure


@dataclass(frozen=True, eq=False)
class LeastSquaresReport:
    solution: np.ndarray
    sigma_max: float
    sigma_min: float
    condition_number: float
    rank_used: int
    residual_norm: float
    singular_values: np.ndarray


def default_rcond(shape):
    return np.finfo(float).eps * max(shape)


def svd_least_squares(A, rhs, rcond=None):
    """Solve ``min ||A a - rhs||`` keeping singular values above ``rcond * sigma_max``.

    The returned solution is the minimum-norm minimizer of the truncated
    problem. ``rcond`` defaults to ``eps * max(A.shape)``.
    """
    A = np.asarray(A)
    rhs = np.asarray(rhs)
    if A.ndim != 2 or min(A.shape) < 1:
        raise ValueError(f"A must be a nonempty matrix, got shape {A.shape}")
    if rhs.shape != (A.shape[0],):
        raise ValueError(f"rhs has shape {rhs.shape}, expected ({A.shape[0]},)")
    if rcond is None:
        rcond = default_rcond(A.shape)
    if not 0 <= rcond < 1:
        raise ValueError("rcond must lie in [0, 1)")
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(rhs))):
        raise ValueError("A and rhs must be finite")
    try:
        U, s, Vh = np.linalg.svd(A, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc

    keep = s > rcond * s[0] if s[0] > 0 else np.zeros_like(s, dtype=bool)
    r = int(keep.sum())
    coeffs = (U[:, :r].conj().T @ rhs) / s[:r]
    a = Vh[:r].conj().T @ coeffs
    if r == 0:
        a = np.zeros(A.shape[1], dtype=np.result_type(A, rhs))

    smin = float(s[-1]) if s.size == A.shape[1] else 0.0
    cond = float(s[0] / smin) if smin > 0 else np.inf
    return LeastSquaresReport(
        solution=a,
        sigma_max=float(s[0]),
        sigma_min=smin,
        condition_number=cond,
        rank_used=r,
        residual_norm=float(np.linalg.norm(A @ a - rhs)),
        singular_values=s,
    )
