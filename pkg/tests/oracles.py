"""Independent brute-force references used by the tests.

None of these call into the library's algebra: they enumerate index tuples,
segment tuples or summation indices directly.
"""
from __future__ import annotations

import math
from collections import Counter
from itertools import combinations, combinations_with_replacement, product

import numpy as np


def brute_product(a_levels, b_levels, dim, depth):
    """Tensor product by looping over every pair of words."""
    out = []
    for k in range(depth + 1):
        acc = np.zeros(dim**k)
        for i in range(k + 1):
            for left in product(range(dim), repeat=i):
                for right in product(range(dim), repeat=k - i):
                    li = sum(c * dim ** (i - 1 - p) for p, c in enumerate(left))
                    ri = sum(c * dim ** (k - i - 1 - p) for p, c in enumerate(right))
                    idx = sum(c * dim ** (k - 1 - p) for p, c in enumerate(left + right))
                    acc[idx] += a_levels[i][li] * b_levels[k - i][ri]
        out.append(acc)
    return out


def _segment_moves(times, values):
    h = np.diff(times)
    dv = np.diff(values, axis=0)
    return h, dv


def simplex_coefficient(times, values, word, reverse=False):
    """Iterated integral of a piecewise-linear path over an ordered simplex.

    ``word`` is 0-based. With ``reverse=False`` the letters are integrated at
    increasing times; with ``reverse=True`` at decreasing times. The sum runs
    over monotone assignments of letters to segments; a block of ``r``
    letters sharing a segment contributes its displacement product over ``r!``.
    """
    _, dv = _segment_moves(times, values)
    M = dv.shape[0]
    n = len(word)
    total = 0.0
    for segs in combinations_with_replacement(range(M), n):
        segs = segs[::-1] if reverse else segs
        term = 1.0
        for letter, j in zip(word, segs):
            term *= dv[j, letter]
        for count in Counter(segs).values():
            term /= math.factorial(count)
        total += term
    return total


def brute_signature_levels(times, values, depth, reverse=False):
    d = values.shape[1]
    return [
        np.array([simplex_coefficient(times, values, w, reverse) for w in product(range(d), repeat=k)])
        if k
        else np.ones(1)
        for k in range(depth + 1)
    ]


def brute_iterated_sum(x, m, n, word):
    """``Σ_{m<=i1<...<ik<n} Δx_{i1}^{w1} ... Δx_{ik}^{wk}`` (0-based letters)."""
    dx = np.diff(x, axis=0)
    return sum(
        math.prod(dx[i, a] for i, a in zip(idx, word)) for idx in combinations(range(m, n), len(word))
    )


def brute_iss(x, m, n, letters):
    """ISS coefficient of a word of 1-based bracket letters, by enumeration."""
    dx = np.diff(x, axis=0)
    return sum(
        math.prod(math.prod(dx[i, j - 1] for j in a) for i, a in zip(idx, letters))
        for idx in combinations(range(m, n), len(letters))
    )


def fine_stieltjes(f_eval, times, values, s, t, steps_per_unit=2**12):
    """Midpoint Riemann-Stieltjes sum of a callable on a fine uniform mesh."""
    n = max(1, int(round((t - s) * steps_per_unit)))
    grid = np.linspace(s, t, n + 1)
    pts = np.array([np.array([np.interp(u, times, values[:, i]) for i in range(values.shape[1])]) for u in grid])
    mids = 0.5 * (pts[1:] + pts[:-1])
    return sum(f_eval(mids[i]) @ (pts[i + 1] - pts[i]) for i in range(n))
