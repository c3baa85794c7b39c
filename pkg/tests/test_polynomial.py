import json

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sigeml.paths import line_path
from sigeml.polynomial import ControlledIntegrand, PolynomialMap, poly_integral, poly_matmul
from sigeml.sampling import random_path, random_polynomial


def _sympy_entries(f: PolynomialMap):
    xs = sympy.symbols(f"x1:{f.in_dim + 1}")
    M = sympy.zeros(f.out_dim, f.in_dim)
    for a, C in zip(f.exponents, f.coefficients):
        mono = sympy.Mul(*[x**int(p) for x, p in zip(xs, a)])
        M += sympy.Matrix(C.tolist()) * mono
    return xs, M


def _sympy_directional(f, k, x, vs, last):
    """D^k f(x)[v_1..v_k](last) by symbolic differentiation."""
    xs, M = _sympy_entries(f)
    out = []
    for r in range(f.out_dim):
        g = sum(M[r, c] * last[c] for c in range(f.in_dim))
        for v in vs:
            g = sum(sympy.diff(g, xs[i]) * v[i] for i in range(f.in_dim))
        out.append(float(g.subs(dict(zip(xs, x)))))
    return np.array(out)


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_jets_match_symbolic_derivatives(seed, k):
    rng = np.random.default_rng(seed)
    d, e = int(rng.integers(1, 4)), int(rng.integers(1, 3))
    f = random_polynomial(rng, d, e, 4)
    x = rng.standard_normal(d)
    vs = [rng.standard_normal(d) for _ in range(k)]
    last = rng.standard_normal(d)
    z = last
    for v in reversed(vs):
        z = np.outer(v, z).ravel()
    got = f.jet_at(k, x) @ z if k else f(x) @ last
    np.testing.assert_allclose(got, _sympy_directional(f, k, x, vs, last), rtol=1e-10, atol=1e-10)


def test_evaluation_and_degree():
    f = PolynomialMap.from_terms(2, 1, {(0, 0): {(2, 0): 3.0}, (0, 1): {(1, 1): -1.0, (0, 0): 2.0}})
    np.testing.assert_allclose(f([2.0, 5.0]), [[12.0, -8.0]])
    assert f.degree == 2
    assert PolynomialMap.power(5).degree == 5


def test_gradient_form():
    f = PolynomialMap.gradient(2, {(2, 0): 0.5, (0, 2): 0.5})
    np.testing.assert_allclose(f([3.0, -1.0]), [[3.0, -1.0]])


def test_derivatives_vanish_beyond_degree():
    f = PolynomialMap.univariate([1.0, 2.0, 3.0])
    assert not np.any(f.jet_at(3, [1.7]))
    np.testing.assert_allclose(f.jet_at(2, [0.0]), [[6.0]])


def test_line_restriction_matches_pointwise():
    rng = np.random.default_rng(5)
    f = random_polynomial(rng, 2, 2, 3)
    x0, v = rng.standard_normal(2), rng.standard_normal(2)
    for k in range(3):
        coeffs = f.jet_on_line(k, x0, v)
        for u in (0.0, 0.3, 1.1):
            val = np.tensordot(u ** np.arange(coeffs.shape[0]), coeffs, axes=(0, 0))
            np.testing.assert_allclose(val, f.jet_at(k, x0 + u * v).reshape(val.shape), atol=1e-12)


def test_controlled_integrand_chain_rule():
    # d(Y^{k-1}(z)) = Y^k(dX ⊗ z): compare a centred difference with the next jet
    rng = np.random.default_rng(6)
    X = random_path(rng, 2, 2)
    Y = ControlledIntegrand(random_polynomial(rng, 2, 1, 4), X)
    z = rng.standard_normal(2)
    t, h = 0.4, 1e-6
    dY0 = (Y.apply(0, t + h, z) - Y.apply(0, t - h, z)) / (2 * h)
    v = X.velocities[X.segment_of(t)]
    np.testing.assert_allclose(dY0, Y.apply(1, t, np.outer(v, z).ravel()), rtol=1e-6)
    w = rng.standard_normal(4)
    dY1 = (Y.apply(1, t + h, w) - Y.apply(1, t - h, w)) / (2 * h)
    np.testing.assert_allclose(dY1, Y.apply(2, t, np.outer(v, w).ravel()), rtol=1e-6, atol=1e-8)


def test_controlled_integrand_dimension_check():
    with pytest.raises(ValueError):
        ControlledIntegrand(PolynomialMap.power(2), line_path([1.0, 1.0], 2))


def test_poly_helpers():
    assert poly_integral(np.array([0.0, 0.0, 1.0]), 2.0) == pytest.approx(8 / 3)
    assert poly_integral(np.array([1.0]), 3.0, 1.0) == pytest.approx(2.0)
    A = np.array([[[1.0, 0.0]], [[0.0, 2.0]]])
    B = np.array([[1.0, 1.0], [3.0, 0.0]])
    np.testing.assert_allclose(poly_matmul(A, B), [[1.0], [5.0], [0.0]])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_json_round_trip(seed):
    rng = np.random.default_rng(seed)
    f = random_polynomial(rng, int(rng.integers(1, 4)), int(rng.integers(1, 3)), 3)
    g = PolynomialMap.from_json(json.loads(json.dumps(f.to_json())))
    assert g.to_json() == f.to_json()
    x = rng.standard_normal(f.in_dim)
    assert np.array_equal(f(x), g(x))


def test_from_terms_validation():
    with pytest.raises(ValueError):
        PolynomialMap.from_terms(1, 1, {(1, 0): {(1,): 1.0}})
    with pytest.raises(ValueError):
        PolynomialMap.from_terms(2, 1, {(0, 0): {(1,): 1.0}})
