import doctest

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.linear_model import LinearRegression
from sklearn.pipeline import make_pipeline

import transheat.estimator as estimator_module
from transheat import TransmutedHeatFeatures, TransmutedHeatRegressor


def heat_kernel_like(X):
    # exp(x + t) solves u_xx = u_t
    return np.exp(X[:, 0] + X[:, 1])


def boundary_points(n=40, tau=1.0):
    s = np.linspace(0, tau, n)
    x = np.linspace(-1, 1, n)
    return np.vstack([np.column_stack([-np.ones(n), s]),
                      np.column_stack([x, np.zeros(n)]),
                      np.column_stack([np.ones(n), s])])


def test_module_doctest():
    result = doctest.testmod(estimator_module)
    assert result.failed == 0 and result.attempted > 0


def test_params_and_clone():
    reg = TransmutedHeatRegressor(q=1.5, order=7, rcond=1e-12)
    params = reg.get_params()
    assert params["order"] == 7 and params["q"] == 1.5 and params["rcond"] == 1e-12
    other = clone(reg)
    assert other is not reg and other.get_params() == params
    reg.set_params(order=4)
    assert reg.order == 4


def test_fit_predict_free_heat():
    X = boundary_points()
    Z = np.array([[0.3, 0.5], [-0.6, 0.9], [0.0, 0.1]])
    reg = TransmutedHeatRegressor(order=22, alpha="real-first").fit(X, heat_kernel_like(X))
    np.testing.assert_allclose(reg.predict(Z), heat_kernel_like(Z), rtol=1e-9)
    assert reg.score(Z, heat_kernel_like(Z)) > 1 - 1e-12
    # the default complex particular solution gives real fits up to round-off
    pred = TransmutedHeatRegressor(order=22).fit(X, heat_kernel_like(X)).predict(Z)
    np.testing.assert_allclose(pred, heat_kernel_like(Z), rtol=1e-9)
    assert np.max(np.abs(pred.imag)) < 1e-11


def test_predict_grid_matches_predict():
    X = boundary_points()
    reg = TransmutedHeatRegressor(q=lambda x: x**2, order=12).fit(X, heat_kernel_like(X))
    x = np.linspace(-1, 1, 7)
    t = np.linspace(0, 1, 5)
    G = reg.predict_grid(x, t)
    xx, tt = np.meshgrid(x, t)
    P = reg.predict(np.column_stack([xx.ravel(), tt.ravel()])).reshape(G.shape)
    np.testing.assert_allclose(G, P, rtol=1e-10, atol=1e-12)


def test_features_in_pipeline():
    # real features are needed by LinearRegression
    X = boundary_points(20)
    y = heat_kernel_like(X)
    pipe = make_pipeline(TransmutedHeatFeatures(order=12, alpha="real-first"), LinearRegression(fit_intercept=False))
    pipe.fit(X, y)
    Z = np.array([[0.2, 0.4]])
    np.testing.assert_allclose(pipe.predict(Z), heat_kernel_like(Z), rtol=1e-6)
    names = pipe[0].get_feature_names_out()
    assert list(names[:3]) == ["u0", "u1", "u2"] and len(names) == 13


def test_not_fitted():
    with pytest.raises(NotFittedError):
        TransmutedHeatRegressor().predict(np.zeros((1, 2)))
    with pytest.raises(NotFittedError):
        TransmutedHeatFeatures().transform(np.zeros((1, 2)))


def test_input_validation():
    reg = TransmutedHeatRegressor(order=3)
    with pytest.raises(ValueError, match="two columns"):
        reg.fit(np.zeros((4, 3)), np.zeros(4))
    with pytest.raises(ValueError, match="y must have shape"):
        reg.fit(np.zeros((4, 2)), np.zeros(3))
    with pytest.raises(ValueError, match="lie in"):
        reg.fit(np.array([[2.0, 0.0]]), np.zeros(1))
    fitted = reg.fit(boundary_points(5), np.ones(15))
    with pytest.raises(ValueError, match="lie in"):
        fitted.predict_grid([1.5], [0.0])


def test_prebuilt_basis_is_reused():
    X = boundary_points(10)
    base = TransmutedHeatRegressor(q=np.cos, order=10).fit(X, heat_kernel_like(X))
    small = TransmutedHeatRegressor(order=6, basis=base.basis_).fit(X, heat_kernel_like(X))
    assert small.basis_ is base.basis_ and small.coef_.shape == (7,)
    with pytest.raises(ValueError, match="order"):
        TransmutedHeatRegressor(order=12, basis=base.basis_).fit(X, heat_kernel_like(X))
