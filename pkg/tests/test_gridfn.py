import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from transheat.exceptions import DomainError, NonvanishingViolation
from transheat.gridfn import (
    GridFunction,
    antiderivative_from_zero,
    chebyshev_grid,
    chebyshev_nodes,
    differentiate,
    interpolate,
    mul,
    reciprocal,
    sample,
    square,
)


@pytest.mark.parametrize(
    "b, m, expected",
    [
        (1.0, 3, [-1.0, 0.0, 1.0]),
        (2.0, 3, [-2.0, 0.0, 2.0]),
        (1.0, 5, [-1.0, -np.sqrt(0.5), 0.0, np.sqrt(0.5), 1.0]),
    ],
)
def test_small_node_sets(b, m, expected):
    np.testing.assert_allclose(chebyshev_nodes(b, m), expected, atol=1e-15)


def test_grid_nodes_are_cgl_points():
    g = chebyshev_grid(1.5, 33)
    j = np.arange(33)
    np.testing.assert_allclose(np.sort(g.nodes), np.sort(1.5 * np.cos(np.pi * j / 32)), atol=1e-15)
    assert np.all(np.diff(g.nodes) > 0)
    assert g.nodes[0] == -1.5 and g.nodes[-1] == 1.5
    assert g.index_of_zero() == 16 and g.nodes[16] == 0.0


@pytest.mark.parametrize("b, m", [(0.0, 32), (-1.0, 32), (1.0, 15)])
def test_grid_rejects_bad_input(b, m):
    with pytest.raises(DomainError):
        chebyshev_grid(b, m)


def test_grid_and_values_are_immutable():
    g = chebyshev_grid(1.0, 16)
    f = sample(np.exp, g)
    with pytest.raises(ValueError):
        f.values[0] = 3.0
    with pytest.raises(ValueError):
        g.nodes[0] = 3.0


def test_sample_examples():
    g = GridFunction  # noqa: F841
    grid = chebyshev_grid(1.0, 17)
    sq = sample(lambda x: x**2, grid)
    np.testing.assert_allclose(sq.values, grid.nodes**2)
    np.testing.assert_array_equal(sample(lambda x: 1.0, grid).values, np.ones(17))
    assert sample(np.exp, grid).at_zero() == 1.0


def test_sample_on_five_nodes():
    from transheat.gridfn import Grid

    grid = Grid(1.0, 5, chebyshev_nodes(1.0, 5))
    np.testing.assert_allclose(sample(lambda x: x**2, grid).values, [1, 0.5, 0, 0.5, 1], atol=1e-15)


def test_antiderivative_examples():
    grid = chebyshev_grid(1.0, 64)
    G = antiderivative_from_zero(sample(lambda x: np.ones_like(x), grid))
    np.testing.assert_allclose(G.values, grid.nodes, atol=1e-15)
    G = antiderivative_from_zero(sample(lambda x: x, grid))
    assert abs(G.values[-1] - 0.5) < 1e-15
    G = antiderivative_from_zero(sample(lambda x: np.exp(2 * x), grid))
    assert abs(G.values[-1] - (np.e**2 - 1) / 2) < 1e-12


@settings(max_examples=60, deadline=None)
@given(
    p=st.integers(min_value=0, max_value=30),
    b=st.floats(min_value=0.25, max_value=4.0),
    m=st.integers(min_value=32, max_value=80),
)
def test_antiderivative_exact_on_monomials(p, b, m):
    grid = chebyshev_grid(b, m)
    G = antiderivative_from_zero(sample(lambda x: x**p, grid))
    exact = grid.nodes ** (p + 1) / (p + 1)
    scale = np.max(np.abs(exact))
    assert np.max(np.abs(G.values - exact)) <= 1e-12 * scale


def test_antiderivative_vanishes_at_origin():
    grid = chebyshev_grid(2.0, 65)
    G = antiderivative_from_zero(sample(np.cos, grid))
    assert G.at_zero() == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("fn", [np.exp, np.cos, lambda x: 1 / (2 + x**2)])
def test_fundamental_theorem_round_trip(fn):
    grid = chebyshev_grid(1.0, 64)
    g = sample(fn, grid)
    back = differentiate(antiderivative_from_zero(g))
    assert np.max(np.abs(back.values - g.values)) <= 1e-8 * g.sup_norm()


def test_pointwise_examples():
    grid = chebyshev_grid(1.0, 64)
    one = sample(lambda x: np.ones_like(x), grid)
    np.testing.assert_array_equal(reciprocal(one).values, one.values)
    assert square(sample(lambda x: x, grid)).values[-1] == 1.0
    prod = mul(sample(np.exp, grid), sample(lambda x: np.exp(-x), grid))
    assert np.max(np.abs(prod.values - 1)) <= 1e-13


def test_reciprocal_detects_zero():
    grid = chebyshev_grid(1.0, 17)
    with pytest.raises(NonvanishingViolation):
        reciprocal(sample(lambda x: x, grid))
    with pytest.raises(NonvanishingViolation):
        reciprocal(sample(lambda x: 1e-11 + 0 * x, grid))


def test_arithmetic_is_pure():
    grid = chebyshev_grid(1.0, 17)
    f = sample(np.exp, grid)
    before = f.values.copy()
    _ = f + 1, f * 2, -f, 1 - f, f * f
    np.testing.assert_array_equal(f.values, before)


def test_mismatched_grids_rejected():
    a = sample(np.exp, chebyshev_grid(1.0, 17))
    b = sample(np.exp, chebyshev_grid(1.0, 33))
    with pytest.raises(ValueError):
        a + b


def test_interpolation_examples():
    grid = chebyshev_grid(1.0, 32)
    assert abs(interpolate(sample(lambda x: x**2, grid), 0.3) - 0.09) < 1e-13
    grid = chebyshev_grid(1.0, 64)
    assert abs(interpolate(sample(np.exp, grid), 0.5) - np.exp(0.5)) < 1e-12


def test_interpolation_is_exact_at_nodes():
    grid = chebyshev_grid(1.3, 41)
    g = sample(lambda x: np.sin(3 * x) + 1j * x, grid)
    np.testing.assert_array_equal(g(grid.nodes), g.values)


def test_interpolation_domain():
    grid = chebyshev_grid(1.0, 16)
    g = sample(np.exp, grid)
    g(1.0 + 1e-13)
    with pytest.raises(DomainError):
        g(1.0 + 1e-9)
