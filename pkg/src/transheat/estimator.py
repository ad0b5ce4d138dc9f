"""scikit-learn compatible front end to the transmuted heat polynomial basis.

Inputs ``X`` are arrays of shape ``(n_samples, 2)`` holding ``(x, t)`` pairs.

>>> import numpy as np
>>> reg = TransmutedHeatRegressor(q=lambda x: x**2, order=10)
>>> X = np.array([[-1.0, 0.5], [0.0, 0.0], [1.0, 0.5]])
>>> reg.fit(X, np.exp(-X[:, 0]**2 / 2 - X[:, 1])).coef_.shape
(11,)
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .gridfn import DEFAULT_NODES, chebyshev_grid, sample
from .heat_basis import TransmutedHeatBasis
from .lsq import svd_least_squares

# None: eps * max(shape) relative to the largest singular value of the
# (equilibrated) design matrix.
DEFAULT_RCOND = None


def _zero(x):
    return np.zeros_like(x)


def check_points(X, b=None):
    """Validate an ``(n, 2)`` array of ``(x, t)`` points, optionally inside ``|x| <= b``."""
    X = check_array(X, dtype=np.float64, ensure_2d=True)
    if X.shape[1] != 2:
        raise ValueError(f"X must have two columns (x, t), got {X.shape[1]}")
    if b is not None and np.any(np.abs(X[:, 0]) > b * (1 + 1e-12)):
        raise ValueError(f"x coordinates must lie in [-{b}, {b}]")
    return X


def sample_potential(q, grid):
    if q is None:
        q = _zero
    elif np.isscalar(q):
        value = q
        q = lambda x: np.full_like(x, value, dtype=np.result_type(x, value))  # noqa: E731
    return sample(q, grid)


class TransmutedHeatFeatures(TransformerMixin, BaseEstimator):
    """Map ``(x, t)`` points to the values ``u_0..u_order`` of the transmuted heat polynomials.

    Parameters
    ----------
    q : callable, number or None
        Potential as a vectorized function of ``x``; ``None`` means ``q = 0``.
    b : float
        Half-width of the spatial interval.
    order : int
        Highest polynomial index ``N``.
    grid_size : int
        Number of Chebyshev nodes used for the formal powers.
    alpha : {"auto", "real-first"} or complex
        How the nonvanishing particular solution is chosen, see
        :func:`transheat.spps.nonvanishing_solution`.
    basis : TransmutedHeatBasis, optional
        Prebuilt basis of order ``>= order``; skips construction in ``fit``.
    """

    def __init__(self, q=None, b=1.0, order=20, grid_size=DEFAULT_NODES, alpha="auto",
                 basis=None):
        self.q = q
        self.b = b
        self.order = order
        self.grid_size = grid_size
        self.alpha = alpha
        self.basis = basis

    def fit(self, X=None, y=None):
        if X is not None:
            check_points(X, self.b)
        if self.basis is not None:
            if self.basis.N < self.order:
                raise ValueError(f"supplied basis has order {self.basis.N} < {self.order}")
            self.basis_ = self.basis
        else:
            grid = chebyshev_grid(self.b, self.grid_size)
            self.basis_ = TransmutedHeatBasis.build(sample_potential(self.q, grid), self.order,
                                                    strategy=self.alpha)
        self.n_features_in_ = 2
        return self

    def transform(self, X):
        check_is_fitted(self, "basis_")
        X = check_points(X, self.basis_.b)
        return self.basis_.design_matrix(X[:, 0], X[:, 1], upto=self.order)

    def get_feature_names_out(self, input_features=None):
        return np.array([f"u{n}" for n in range(self.order + 1)], dtype=object)


class TransmutedHeatRegressor(RegressorMixin, BaseEstimator):
    """Fit ``sum_n a_n u_n(x, t)`` to data by truncated-SVD least squares.

    Every fitted function solves ``u_xx - q u = u_t`` exactly up to the
    accuracy of the formal powers, so ``fit`` is normally fed points on the
    parabolic boundary and ``predict`` is used in the interior.

    Columns of the design matrix are scaled to unit 2-norm before the SVD
    when ``equilibrate`` is set; the cutoff ``rcond`` is relative to the
    largest singular value of the scaled matrix.

    Complex potentials or ``alpha`` give complex predictions, for which the
    inherited R^2 ``score`` is not meaningful.
    """

    def __init__(self, q=None, b=1.0, order=20, grid_size=DEFAULT_NODES, alpha="auto",
                 rcond=DEFAULT_RCOND, equilibrate=True, basis=None):
        self.q = q
        self.b = b
        self.order = order
        self.grid_size = grid_size
        self.alpha = alpha
        self.rcond = rcond
        self.equilibrate = equilibrate
        self.basis = basis

    def fit(self, X, y):
        X = check_points(X, self.b)
        y = np.asarray(y)
        if y.shape != (X.shape[0],):
            raise ValueError(f"y must have shape ({X.shape[0]},), got {y.shape}")
        features = TransmutedHeatFeatures(q=self.q, b=self.b, order=self.order,
                                          grid_size=self.grid_size, alpha=self.alpha,
                                          basis=self.basis).fit()
        A = features.transform(X)
        scale = np.linalg.norm(A, axis=0) if self.equilibrate else np.ones(A.shape[1])
        scale[scale == 0] = 1.0
        self.report_ = svd_least_squares(A / scale, y, rcond=self.rcond)
        self.coef_ = self.report_.solution / scale
        self.column_scale_ = scale
        self.features_ = features
        self.basis_ = features.basis_
        self.n_features_in_ = 2
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        return self.features_.transform(X) @ self.coef_

    def predict_grid(self, x, t):
        """Evaluate the fitted sum on the tensor grid; result has shape ``(len(t), len(x))``."""
        check_is_fitted(self, "coef_")
        x = np.asarray(x, dtype=float).ravel()
        check_points(np.column_stack([x, np.zeros_like(x)]), self.basis_.b)
        return self.basis_.grid_sum(self.coef_, x, t)
