"""Iterated sums, the iterated-sum signature, and discrete/continuous identities.

Increments follow ``Δx_k = x_{k+1} - x_k`` throughout. The ``*_check``
functions return the largest absolute defect of the identity they test.
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .paths import PiecewiseLinearPath, TimeSeries, interpolate_linear
from .sawtooth import Direction, TensorPolyPath, sawtooth
from .signature import signature
from .tensor import TruncatedTensor, tensor_mul, unit, vector, word_index
from .words import (
    ASeries,
    AWord,
    Composition,
    bracket_by_composition,
    compositions,
    hoffman_map,
    non_unity_projection,
    quasi_shuffle,
    single_letter_words,
    word_weight,
    words_up_to_weight,
)

MAX_ISS_WEIGHT = 6


def _check_range(x: TimeSeries, m: int, n: int) -> None:
    if not 0 <= m <= n <= x.horizon:
        raise ValueError(f"need 0 <= m <= n <= N, got m={m}, n={n}, N={x.horizon}")


def iterated_sum(x: TimeSeries, m: int, n: int, depth: int) -> TruncatedTensor:
    """``Σ_{m,n}(x)``: level ``l`` is ``Σ_{m<=i_1<...<i_l<n} Δx_{i_1} ⊗ ... ⊗ Δx_{i_l}``."""
    _check_range(x, m, n)
    result = unit(x.dim, depth)
    for k in range(m, n):
        result = tensor_mul(result, unit(x.dim, depth) + vector(x[k + 1] - x[k], depth))
    return result


def _letter_power(dx: np.ndarray, a) -> np.ndarray:
    """``Δx^{[a]}`` for every step: product of the components named by the letter."""
    out = np.ones(dx.shape[0])
    for i in a:
        out = out * dx[:, i - 1]
    return out


def iss_table(x: TimeSeries, m: int, max_weight: int, words: Sequence[AWord] | None = None):
    """Running ISS values ``⟨𝒮_{m,n}, w⟩`` for ``n = m..N`` (arrays of length ``N-m+1``).

    Computed along the prefix tree: ``⟨𝒮_{m,n}, u a⟩ = Σ_{m<=l<n} ⟨𝒮_{m,l}, u⟩ Δx_l^{[a]}``.
    """
    if max_weight > MAX_ISS_WEIGHT:
        raise ValueError(f"weight bound {max_weight} exceeds guard {MAX_ISS_WEIGHT}")
    if not 0 <= m <= x.horizon:
        raise ValueError(f"start index {m} outside 0..{x.horizon}")
    dx = x.increments()[m:]
    span = x.horizon - m + 1
    table = {(): np.ones(span)}
    todo = words if words is not None else words_up_to_weight(x.dim, max_weight)
    needed = {w[:i] for w in todo for i in range(1, len(w) + 1)}
    for w in sorted(needed, key=len):
        table[w] = _extend(table[w[:-1]], dx, w[-1])
    return table


def _extend(prev: np.ndarray, dx: np.ndarray, a) -> np.ndarray:
    out = np.zeros_like(prev)
    out[1:] = np.cumsum(prev[:-1] * _letter_power(dx, a))
    return out


def iss(x: TimeSeries, m: int, n: int, max_weight: int) -> dict[AWord, float]:
    """Iterated-sum signature ``𝒮_{m,n}(x)`` on all words of weight ``<= max_weight``."""
    _check_range(x, m, n)
    table = iss_table(x, m, max_weight)
    return {w: float(vals[n - m]) for w, vals in table.items()}


def iss_word(x: TimeSeries, m: int, n: int, w: AWord) -> float:
    _check_range(x, m, n)
    table = iss_table(x, m, word_weight(w), words=[tuple(w)])
    return float(table[tuple(w)][n - m])


def pair(values: dict[AWord, float], s: ASeries) -> float:
    """``⟨𝒮, s⟩`` for a linear combination of words."""
    return float(sum(c * values[w] for w, c in s.items()))


def iss_character_check(x: TimeSeries, max_weight: int) -> float:
    """Quasi-shuffle character and Chen defects of ``𝒮(x)``."""
    N = x.horizon
    full = iss(x, 0, N, max_weight)
    words = [w for w in full if w]
    worst = 0.0
    for u in words:
        for v in words:
            if word_weight(u) + word_weight(v) > max_weight:
                continue
            worst = max(worst, abs(full[u] * full[v] - pair(full, quasi_shuffle(u, v))))
    for mid in range(N + 1):
        left = iss(x, 0, mid, max_weight)
        right = iss(x, mid, N, max_weight)
        for w in full:
            chen = sum(left[w[:i]] * right[w[i:]] for i in range(len(w) + 1))
            worst = max(worst, abs(chen - full[w]))
    return worst


def _integer_sawtooth(X: PiecewiseLinearPath, depth: int) -> TensorPolyPath:
    return sawtooth(X, unit(X.dim, depth), Direction.BACKWARD, depth)


def _require_interpolation(x: TimeSeries, X: PiecewiseLinearPath) -> None:
    if not X.interpolates(x):
        raise ValueError("path does not interpolate the time series at the integers")


def sawtooth_recursion_check(x: TimeSeries, X: PiecewiseLinearPath, depth: int) -> float:
    """Defect of

        π_l(S_{0,N}) = Σ_k π_{l-1}(S_{0,k}) ⊗ Δx_k + Σ_{q=2}^{l} (-1)^{q+1} π_{l-q}(S_{0,N}) ⊗ π_q(Z_N)

    over ``2 <= l <= depth`` with ``Z = Z^-(X, 1)``.
    """
    _require_interpolation(x, X)
    N = x.horizon
    if depth < 2:
        return 0.0
    Z_N = _integer_sawtooth(X, depth)(float(N))
    S_N = signature(X, 0.0, float(N), depth)
    partial = [signature(X, 0.0, float(k), depth) for k in range(N)]
    dx = x.increments()
    worst = 0.0
    for l in range(2, depth + 1):
        rhs = sum(np.outer(partial[k].levels[l - 1], dx[k]).reshape(-1) for k in range(N))
        for q in range(2, l + 1):
            rhs = rhs + (-1) ** (q + 1) * np.outer(S_N.levels[l - q], Z_N.levels[q]).reshape(-1)
        worst = max(worst, float(np.max(np.abs(S_N.levels[l] - rhs))))
    return worst


def sawtooth_values(X: PiecewiseLinearPath, depth: int) -> list[TruncatedTensor]:
    """``Z^-_k(X, 1)`` at ``k = 0..N``."""
    Z = _integer_sawtooth(X, depth)
    return [Z(float(k)) for k in range(X.horizon() + 1)]


def sawtooth_sum_signature(
    x: TimeSeries, z_values: Sequence[TruncatedTensor], I: Composition, m: int, n: int
) -> np.ndarray:
    """Sawtooth sum signature ``Σ^I_{m,n}(x, Z)`` as a flat array of level ``‖I‖``.

    Reading ``I`` left to right: a part 1 opens a new summation index ``k``
    (strictly above the previous one, below the current upper bound) and
    contributes ``Δx_k``; a part ``p >= 2`` contributes ``π_p(Z_j)`` at the
    current upper bound ``j`` (the next summation index, or ``n``). Equivalently

        Σ^{()}    = 1
        Σ^{(I,1)}_{m,n} = Σ_{m<=k<n} Σ^I_{m,k} ⊗ Δx_k
        Σ^{(J,p)}_{m,n} = Σ^J_{m,n} ⊗ π_p(Z_n)
    """
    _check_range(x, m, n)
    I = Composition(I)
    if I and max(I) > min(z.depth for z in z_values):
        raise ValueError("sawtooth values are not deep enough for this composition")
    if len(z_values) != x.horizon + 1:
        raise ValueError("need one sawtooth value per integer 0..N")
    d = x.dim
    dx = x.increments()
    # cur[j - m] = Σ^{prefix}_{m,j} for j = m..n
    cur = [np.ones(1) for _ in range(m, n + 1)]
    for part in I:
        if part == 1:
            nxt = [np.zeros(cur[0].size * d)]
            acc = np.zeros(cur[0].size * d)
            for j in range(m + 1, n + 1):
                acc = acc + np.outer(cur[j - 1 - m], dx[j - 1]).reshape(-1)
                nxt.append(acc.copy())
        else:
            nxt = [np.outer(cur[j - m], z_values[j].levels[part]).reshape(-1) for j in range(m, n + 1)]
        cur = nxt
    return cur[n - m]


def composition_sign(I: Composition) -> int:
    star = non_unity_projection(I)
    return (-1) ** (star.weight + star.length)


def discrete_signature_expansion(x: TimeSeries, X: PiecewiseLinearPath, level: int) -> np.ndarray:
    """``Σ_{I ∈ C(l)} (-1)^{‖I*‖+|I*|} Σ^I_{0,N}(x, Z)`` with ``Z = Z^-(X, 1)``."""
    _require_interpolation(x, X)
    z = sawtooth_values(X, max(level, 1))
    N = x.horizon
    return sum(composition_sign(I) * sawtooth_sum_signature(x, z, I, 0, N) for I in compositions(level))


def discrete_signature_expansion_check(x: TimeSeries, X: PiecewiseLinearPath, depth: int) -> float:
    _require_interpolation(x, X)
    N = x.horizon
    S = signature(X, 0.0, float(N), depth)
    z = sawtooth_values(X, max(depth, 1))
    worst = 0.0
    for l in range(1, depth + 1):
        expansion = sum(composition_sign(I) * sawtooth_sum_signature(x, z, I, 0, N) for I in compositions(l))
        worst = max(worst, float(np.max(np.abs(S.levels[l] - expansion))))
    return worst


def _dx_power(dx_row: np.ndarray | None, indices) -> float:
    if not indices:
        return 1.0
    if dx_row is None:
        return 0.0
    return float(np.prod([dx_row[i - 1] for i in indices]))


def explicit_sawtooth_linear(x: TimeSeries, component: Sequence[int], t: float) -> float:
    """``⟨Z^-_t, j_1...j_n⟩`` for the linear interpolation of ``x``, from ISS coefficients.

    Uses the closed form in the local time ``τ = t - [t]``

        (τ^n/n! - τ^{n-1}/(n-1)!) Δx_{[t]}^{[j_1..j_n]}
        + Σ_{i=0}^{n-2} τ^i/i! Σ_{I ∈ C(n-i), I_1 > 1} (1/I! - 1/(I-e_1)!)
              Δx_{[t]}^{[j_1..j_i]} ⟨𝒮_{0,[t]}(x), [j_n ... j_{i+1}]_I⟩
    """
    js = tuple(int(j) for j in component)
    n = len(js)
    if n < 2:
        raise ValueError("explicit sawtooth formula needs a component of length >= 2")
    N = x.horizon
    if not 0 <= t <= N:
        raise ValueError(f"t = {t} outside [0, {N}]")
    base = int(math.floor(t))
    tau = t - base
    dx_row = x[base + 1] - x[base] if base < N else None
    value = (tau**n / math.factorial(n) - tau ** (n - 1) / math.factorial(n - 1)) * _dx_power(dx_row, js)
    table = iss_table(x, 0, n)
    for i in range(n - 1):
        weight = tau**i / math.factorial(i)
        if weight == 0.0:
            continue
        rev = tuple((j,) for j in reversed(js[i:]))
        inner = 0.0
        for I in compositions(n - i):
            if I[0] == 1:
                continue
            shifted = Composition((I[0] - 1,) + tuple(I[1:]))
            coef = 1.0 / I.factorial - 1.0 / shifted.factorial
            inner += coef * table[bracket_by_composition(rev, I)][base]
        value += weight * _dx_power(dx_row, js[:i]) * inner
    return float(value)


def first_identity(x: TimeSeries, component: Sequence[int], m: int) -> tuple[float, float]:
    """Both closed forms of ``⟨Z^-_m, j_1...j_n⟩`` at an integer ``m``.

    first:  Σ_{I ∈ C(n), I_1 > 1} (1/I! - 1/(I-e_1)!) ⟨𝒮_{0,m}, [j_n...j_1]_I⟩
    second: Σ_{I ∈ C(n)} ⟨𝒮_{0,m}, [j_n...j_1]_I⟩/I!
            - Σ_{I ∈ C(n-1)} Σ_{k<m} ⟨𝒮_{k,m}, [j_{n-1}...j_1]_I⟩ Δx_k^{j_n} / I!
    """
    js = tuple(int(j) for j in component)
    n = len(js)
    if n < 2:
        raise ValueError("component must have length >= 2")
    _check_range(x, 0, m)
    rev = tuple((j,) for j in reversed(js))
    whole = iss_table(x, 0, n)
    first = 0.0
    for I in compositions(n):
        if I[0] > 1:
            shifted = Composition((I[0] - 1,) + tuple(I[1:]))
            first += (1.0 / I.factorial - 1.0 / shifted.factorial) * whole[bracket_by_composition(rev, I)][m]
    second = sum(whole[bracket_by_composition(rev, I)][m] / I.factorial for I in compositions(n))
    rev_short = tuple((j,) for j in reversed(js[:-1]))
    dx = x.increments()
    for k in range(m):
        tail = iss_table(x, k, n - 1)
        for I in compositions(n - 1):
            second -= tail[bracket_by_composition(rev_short, I)][m - k] * dx[k, js[-1] - 1] / I.factorial
    return float(first), float(second)


def hoffman_identity_check(x: TimeSeries, m: int, depth: int) -> float:
    """Largest ``|⟨S_{0,m}(X), w⟩ - ⟨𝒮_{0,m}(x), Φ_H(w)⟩|`` over words of length ``<= depth``.

    ``X`` is the linear interpolation of ``x``.
    """
    _check_range(x, 0, m)
    X = interpolate_linear(x)
    S = signature(X, 0.0, float(m), depth)
    values = iss(x, 0, m, depth)
    worst = 0.0
    for w in single_letter_words(x.dim, depth):
        lhs = float(S.levels[len(w)][word_index([a[0] for a in w], x.dim)])
        worst = max(worst, abs(lhs - pair(values, hoffman_map(w))))
    return worst
