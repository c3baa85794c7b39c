import math

import numpy as np
import pytest

from sigeml.bernoulli import bernoulli_number
from sigeml.optimal import (
    level_objective,
    optimal_tensor,
    optimal_tensor_lambda,
    optimality_check,
    optimality_margins,
)
from sigeml.paths import PathEnsemble, TimeSeries, interpolate_linear, line_path
from sigeml.sampling import random_path, spawn
from sigeml.tensor import from_levels, unit


def _expected(lam, direction, l):
    variant = "-" if direction == "forward" else "+"
    return lam**l * float(bernoulli_number(l, variant)) / math.factorial(l)


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("direction", ["forward", "backward"])
def test_bernoulli_recovery(lam, direction):
    b = optimal_tensor(PathEnsemble.single(line_path(lam, 3)), direction, 8)
    for l in range(9):
        assert abs(b.levels[l][0] - _expected(lam, direction, l)) < 1e-12


def test_slope_two_level_one():
    b = optimal_tensor(PathEnsemble.single(line_path(2.0, 1)), "forward", 1)
    assert b.levels[1][0] == pytest.approx(-1.0)


def test_two_path_ensemble_matches_moment_recursion():
    for N in (1, 2, 3):
        ens = PathEnsemble.uniform([line_path(1.0, N), line_path(2.0, N)])
        for direction in ("forward", "backward"):
            b = optimal_tensor(ens, direction, 6)
            ref = optimal_tensor_lambda([(1 + 2**j) / 2 for j in range(1, 8)], direction, 6, horizon=N)
            for l in range(7):
                assert b.levels[l][0] == pytest.approx(ref.levels[l][0], abs=1e-12)


def test_moment_recursion_for_deterministic_slope():
    for lam in (0.5, 1.0, 3.0):
        for N in (1, 4):
            for direction in ("forward", "backward"):
                b = optimal_tensor_lambda([lam**j for j in range(1, 10)], direction, 8, horizon=N)
                for l in range(9):
                    assert b.levels[l][0] == pytest.approx(_expected(lam, direction, l), abs=1e-10)


def test_moment_recursion_errors():
    with pytest.raises(ValueError):
        optimal_tensor_lambda([0.0, 1.0, 1.0], "forward", 2)
    with pytest.raises(ValueError):
        optimal_tensor_lambda([1.0, 1.0], "forward", 2)


def test_zero_variation_rejected():
    const = interpolate_linear(TimeSeries([[1.0], [1.0], [1.0]]))
    with pytest.raises(ValueError):
        optimal_tensor(PathEnsemble.single(const), "forward", 2)


def test_line_level_one_minimiser():
    ens = PathEnsemble.single(line_path(1.0, 1))
    b = optimal_tensor(ens, "forward", 1)
    assert abs(b.levels[1][0] + 0.5) < 1e-12

    def J(v):
        return level_objective(ens, "forward", from_levels(1, [[1.0], [v]]), 1)

    # ∫_0^1 (t + v)^2 dt = 1/3 + v + v^2
    assert J(-0.5) == pytest.approx(1 / 12)
    assert J(-0.5) < J(-0.4) and J(-0.5) < J(-0.6)


@pytest.mark.parametrize("N", [1, 3])
def test_objective_is_quadratic_with_total_variation_curvature(N):
    ens = PathEnsemble.uniform([line_path(1.0, N), line_path(2.0, N)])
    b = optimal_tensor(ens, "backward", 2)
    vs = np.array([-1.0, 0.0, 1.0])
    vals = [level_objective(ens, "backward", b.with_level(2, [v]), 2) for v in vs]
    a2, a1, a0 = np.polyfit(vs, vals, 2)
    assert a2 == pytest.approx(1.5 * N)  # E ∫ |dX| with slopes 1 and 2
    assert -a1 / (2 * a2) == pytest.approx(b.levels[2][0], abs=1e-12)
    unit_case = PathEnsemble.single(line_path(1.0, 1))
    ys = [level_objective(unit_case, "forward", from_levels(1, [[1.0], [v]]), 1) for v in vs]
    assert np.polyfit(vs, ys, 2)[0] == pytest.approx(1.0)


def test_random_planar_ensemble_is_optimal():
    paths = [random_path(rng, 2, 2) for rng in spawn(11, 3)]
    ens = PathEnsemble.uniform(paths)
    for direction in ("forward", "backward"):
        assert optimality_check(ens, direction, 3, 100, rng=1)
        assert np.all(optimality_margins(ens, direction, 3, 10, rng=2) > 0)


def test_perturbing_away_from_optimum_is_detected():
    ens = PathEnsemble.single(line_path(1.0, 2))
    good = optimal_tensor(ens, "forward", 2)
    bad = good.with_level(2, good.levels[2] + 0.2)
    assert level_objective(ens, "forward", bad, 2) > level_objective(ens, "forward", good, 2)
    assert level_objective(ens, "forward", unit(1, 2), 2) > level_objective(ens, "forward", good, 2)
