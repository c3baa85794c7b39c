import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sigeml.paths import (
    PathEnsemble,
    PiecewiseLinearPath,
    TimeSeries,
    increment,
    interpolate_linear,
    line_path,
    reparametrize_arclength,
    total_variation,
)

L_SHAPE = TimeSeries([[0, 0], [1, 0], [1, 1]])


def test_interpolation_of_a_ramp():
    X = interpolate_linear(TimeSeries([0, 1, 2]))
    assert X.dim == 1 and X.horizon() == 2
    assert X(0.5)[0] == 0.5 and X(1.75)[0] == 1.75
    np.testing.assert_array_equal(X.velocities, [[1.0], [1.0]])


def test_constant_series_has_zero_velocity():
    X = interpolate_linear(TimeSeries([0, 0]))
    assert not X.velocities.any()
    assert total_variation(X, 0, 1) == 0.0


def test_l_shape_velocities_and_length():
    X = interpolate_linear(L_SHAPE)
    np.testing.assert_array_equal(X.velocities, [[1, 0], [0, 1]])
    assert total_variation(X, 0, 2) == 2.0
    assert total_variation(line_path(1.0, 2), 0, 2) == 2.0


def test_constant_extension_outside_window():
    X = interpolate_linear(L_SHAPE)
    np.testing.assert_array_equal(X(-1.0), [0, 0])
    np.testing.assert_array_equal(X(5.0), [1, 1])
    assert total_variation(X, -3, 9) == 2.0


def test_series_validation():
    with pytest.raises(ValueError):
        TimeSeries([1.0])
    with pytest.raises(ValueError):
        TimeSeries([0.0, np.nan])
    with pytest.raises(ValueError):
        PiecewiseLinearPath([0, 1, 1], [0, 1, 2])


def test_increments():
    x = TimeSeries([0, 1, 3])
    assert increment(x, 1)[0] == 2
    assert increment(TimeSeries([4, 4, 4]), 0)[0] == 0
    with pytest.raises(IndexError):
        increment(x, 2)


def test_total_variation_rejects_reversed_interval():
    with pytest.raises(ValueError):
        total_variation(line_path(1.0, 2), 1.0, 0.5)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=3, max_size=8), st.floats(0, 1), st.floats(0, 1))
def test_total_variation_is_additive(vals, a, b):
    X = interpolate_linear(TimeSeries(vals))
    N = X.horizon()
    s, u = sorted((a * N, b * N))
    whole = total_variation(X, 0, N)
    assert total_variation(X, 0, s) + total_variation(X, s, u) + total_variation(X, u, N) == pytest.approx(whole, abs=1e-12)


def test_reparametrize_line_keeps_speed():
    X = PiecewiseLinearPath([0.0, 1.0], [[0.0], [2.0]])
    Y = reparametrize_arclength(X)
    np.testing.assert_allclose(Y.velocities, [[2.0]])


def test_reparametrize_l_shape_unit_speed():
    Y = reparametrize_arclength(interpolate_linear(L_SHAPE))
    np.testing.assert_allclose(np.linalg.norm(Y.velocities, axis=1), 1.0)


def test_reparametrize_drops_flat_segment():
    X = PiecewiseLinearPath([0, 1, 2, 3], [[0.0], [1.0], [1.0], [3.0]])
    Y = reparametrize_arclength(X)
    assert Y.n_segments == 2
    np.testing.assert_allclose(np.abs(Y.velocities), 1.0)
    np.testing.assert_allclose(Y.values, [[0], [1], [3]])


def test_reparametrize_rejects_constant():
    with pytest.raises(ValueError):
        reparametrize_arclength(interpolate_linear(TimeSeries([1, 1])))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=3, max_size=8))
def test_total_variation_invariant_under_reparametrisation(vals):
    X = interpolate_linear(TimeSeries(vals))
    if total_variation(X, X.start, X.end) == 0:
        return
    Y = reparametrize_arclength(X)
    assert total_variation(Y, Y.start, Y.end) == pytest.approx(total_variation(X, X.start, X.end), rel=1e-12)


def test_interpolates_checks_values():
    x = TimeSeries([0, 1, 3])
    X = interpolate_linear(x)
    assert X.interpolates(x)
    assert not X.interpolates(TimeSeries([0, 1, 2]))
    refined = PiecewiseLinearPath([0, 0.5, 1, 2], [0, 7, 1, 3])
    assert refined.interpolates(x)


def test_horizon_requires_integer_knots():
    with pytest.raises(ValueError):
        PiecewiseLinearPath([0.0, 1.5], [0.0, 1.0]).horizon()


def test_ensemble_validation():
    a, b = line_path(1.0, 2), line_path(2.0, 2)
    assert len(PathEnsemble.uniform([a, b])) == 2
    with pytest.raises(ValueError):
        PathEnsemble((a, b), np.array([0.5, 0.6]))
    with pytest.raises(ValueError):
        PathEnsemble.uniform([a, line_path(1.0, 3)])
