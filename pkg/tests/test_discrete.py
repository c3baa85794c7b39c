import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_iss, brute_iterated_sum
from sigeml.discrete import (
    composition_sign,
    discrete_signature_expansion,
    discrete_signature_expansion_check,
    explicit_sawtooth_linear,
    first_identity,
    hoffman_identity_check,
    iss,
    iss_character_check,
    iss_word,
    iterated_sum,
    sawtooth_recursion_check,
    sawtooth_sum_signature,
    sawtooth_values,
)
from sigeml.paths import TimeSeries, interpolate_linear
from sigeml.sampling import random_series
from sigeml.sawtooth import sawtooth
from sigeml.signature import signature
from sigeml.tensor import max_abs_diff, tensor_mul, unit, word_index
from sigeml.words import Composition, compositions, words_up_to_weight

RAMP3 = TimeSeries([0, 1, 3])


def test_iterated_sum_examples():
    S = iterated_sum(RAMP3, 0, 2, 2)
    assert S.levels[2][0] == 2.0
    assert S.levels[1][0] == 3.0
    assert max_abs_diff(iterated_sum(RAMP3, 1, 1, 3), unit(1, 3)) == 0.0
    with pytest.raises(ValueError):
        iterated_sum(RAMP3, 2, 1, 2)


@pytest.mark.parametrize("seed", range(4))
def test_iterated_sum_against_enumeration_and_chen(seed):
    x = random_series(np.random.default_rng(seed), 5, 2)
    S = iterated_sum(x, 0, 5, 3)
    for k in range(1, 4):
        for w in np.ndindex(*(2,) * k):
            assert S.levels[k][word_index([i + 1 for i in w], 2)] == pytest.approx(
                brute_iterated_sum(x.values, 0, 5, w), abs=1e-12
            )
    chen = tensor_mul(iterated_sum(x, 0, 2, 3), iterated_sum(x, 2, 5, 3))
    assert max_abs_diff(chen, S) < 1e-12


def test_iss_examples():
    vals = iss(RAMP3, 0, 2, 2)
    assert vals[((1, 1),)] == 5.0
    assert vals[((1,), (1,))] == 2.0
    assert all(v == 0 for w, v in iss(RAMP3, 1, 1, 2).items() if w)


def test_iss_single_step():
    x = TimeSeries([[0.0, 0.0], [2.0, 3.0]])
    vals = iss(x, 0, 1, 2)
    assert vals[((1,), (2,))] == 0.0
    assert vals[((1, 2),)] == 6.0


@pytest.mark.parametrize("seed", range(3))
def test_iss_against_enumeration(seed):
    x = random_series(np.random.default_rng(seed), 5, 2, integer=True)
    vals = iss(x, 1, 5, 4)
    for w in words_up_to_weight(2, 4):
        assert vals[w] == pytest.approx(brute_iss(x.values, 1, 5, w), abs=1e-9)
    w = ((1, 2), (2,))
    assert iss_word(x, 0, 4, w) == pytest.approx(brute_iss(x.values, 0, 4, w))


def test_iss_guard():
    with pytest.raises(ValueError):
        iss(RAMP3, 0, 2, 7)


def test_character_property():
    x = random_series(np.random.default_rng(8), 5, 2, integer=True)
    assert iss_character_check(x, 4) < 1e-10
    assert iss_character_check(TimeSeries([[1.0, 1.0]] * 4), 3) == 0.0


def test_recursion_hand_example():
    x = TimeSeries([0, 1, 2])
    X = interpolate_linear(x)
    # π_2(S) = 2 = Σ_k π_1(S_{0,k}) Δx_k + (-1)^3 π_2(Z^-_2) = 1 + 1
    assert sawtooth(X, unit(1, 2), "backward", 2)(2.0).levels[2][0] == -1.0
    assert sawtooth_recursion_check(x, X, 2) < 1e-15


def test_recursion_single_step_and_mismatch():
    x = TimeSeries([[0.3, -1.0], [1.2, 0.4]])
    assert sawtooth_recursion_check(x, interpolate_linear(x), 2) < 1e-15
    with pytest.raises(ValueError):
        sawtooth_recursion_check(x, interpolate_linear(TimeSeries([[0.0, 0.0], [1.0, 1.0]])), 2)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_recursion_random(seed):
    x = random_series(np.random.default_rng(seed), 4, 2)
    assert sawtooth_recursion_check(x, interpolate_linear(x), 5) < 1e-10


def test_sum_signature_reductions():
    x = random_series(np.random.default_rng(9), 4, 2)
    z = sawtooth_values(interpolate_linear(x), 4)
    for l in range(1, 5):
        ones = Composition((1,) * l)
        np.testing.assert_allclose(
            sawtooth_sum_signature(x, z, ones, 0, 4), iterated_sum(x, 0, 4, l).levels[l], atol=1e-13
        )
    single = sawtooth_sum_signature(x, z, Composition((3,)), 0, 4)
    np.testing.assert_allclose(single, z[4].levels[3])


def test_sum_signature_mixed_composition_by_hand():
    x = TimeSeries([0.0, 2.0, 3.0])
    z = sawtooth_values(interpolate_linear(x), 3)
    # (2, 1): Σ_k π_2(Z_k) Δx_k;  (1, 2): (x_n - x_0) π_2(Z_n)
    expected = sum((x[k + 1][0] - x[k][0]) * z[k].levels[2][0] for k in range(2))
    got = sawtooth_sum_signature(x, z, Composition((2, 1)), 0, 2)[0]
    assert got == pytest.approx(expected)
    got12 = sawtooth_sum_signature(x, z, Composition((1, 2)), 0, 2)[0]
    assert got12 == pytest.approx((x[2][0] - x[0][0]) * z[2].levels[2][0])


def test_composition_sign():
    assert composition_sign(Composition((1, 1))) == 1
    assert composition_sign(Composition((2,))) == -1
    assert composition_sign(Composition((3, 1))) == 1


def test_expansion_small_cases():
    x = TimeSeries([0, 1, 2])
    X = interpolate_linear(x)
    np.testing.assert_allclose(discrete_signature_expansion(x, X, 1), [2.0])
    assert discrete_signature_expansion_check(x, X, 2) < 1e-12


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 2))
def test_expansion_random(seed, d):
    x = random_series(np.random.default_rng(seed), 4, d)
    X = interpolate_linear(x)
    assert discrete_signature_expansion_check(x, X, 4) < 1e-10


def test_explicit_formula_examples():
    x = TimeSeries(np.arange(5.0))
    for m in range(5):
        assert explicit_sawtooth_linear(x, (1, 1), float(m)) == pytest.approx(-m / 2)
    t = 0.37
    y = TimeSeries([[0.0, 0.0], [1.5, -2.0]])
    assert explicit_sawtooth_linear(y, (1, 2), t) == pytest.approx((t * t / 2 - t) * 1.5 * -2.0)
    with pytest.raises(ValueError):
        explicit_sawtooth_linear(x, (1,), 0.5)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_explicit_formula_matches_engine(seed):
    rng = np.random.default_rng(seed)
    N, d, n = int(rng.integers(1, 5)), int(rng.integers(1, 3)), int(rng.integers(2, 5))
    x = random_series(rng, N, d)
    comp = tuple(int(j) for j in rng.integers(1, d + 1, n))
    Z = sawtooth(interpolate_linear(x), unit(d, n), "backward", n)
    for t in (float(rng.uniform(0, N)), float(rng.integers(0, N + 1))):
        assert explicit_sawtooth_linear(x, comp, t) == pytest.approx(Z(t).levels[n][word_index(comp, d)], abs=1e-10)


def test_first_identity_both_forms():
    x = TimeSeries(np.arange(4.0))
    assert first_identity(x, (1, 1), 2) == pytest.approx((-1.0, -1.0))
    rng = np.random.default_rng(10)
    y = random_series(rng, 4, 2)
    Z = sawtooth(interpolate_linear(y), unit(2, 4), "backward", 4)
    for comp in [(1, 2), (2, 1, 1), (1, 2, 2, 1)]:
        for m in range(5):
            first, second = first_identity(y, comp, m)
            ref = Z(float(m)).levels[len(comp)][word_index(comp, 2)]
            assert first == pytest.approx(ref, abs=1e-10)
            assert second == pytest.approx(ref, abs=1e-10)


def test_hoffman_hand_example():
    x = TimeSeries(np.arange(4.0))
    S = signature(interpolate_linear(x), 0, 3, 2)
    vals = iss(x, 0, 3, 2)
    assert S.levels[2][0] == pytest.approx(4.5)
    assert vals[((1,), (1,))] + 0.5 * vals[((1, 1),)] == pytest.approx(4.5)
    assert hoffman_identity_check(x, 3, 2) < 1e-14


def test_hoffman_level_one():
    x = random_series(np.random.default_rng(11), 3, 3)
    assert hoffman_identity_check(x, 3, 1) < 1e-14


@pytest.mark.parametrize("seed", range(5))
def test_hoffman_random_integer_series(seed):
    x = random_series(np.random.default_rng(seed), 5, 3, integer=True)
    assert hoffman_identity_check(x, 5, 4) < 1e-9
    assert hoffman_identity_check(x, 3, 4) < 1e-9


def test_compositions_cover_expansion_terms():
    assert sum(1 for _ in compositions(4)) == 8
