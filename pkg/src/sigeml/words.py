"""Compositions, words over the bracket alphabet, (quasi-)shuffles and antipodes.

A letter is a sorted tuple of indices, e.g. ``(1, 2)`` for ``[12]``; a word
is a tuple of letters. Linear combinations of words are plain dicts mapping
words to float coefficients (zero coefficients are dropped).
"""
from __future__ import annotations

import math
import re
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, Tuple

Letter = Tuple[int, ...]
AWord = Tuple[Letter, ...]
ASeries = Dict[AWord, float]


class Composition(tuple):
    """Ordered tuple of positive parts. The empty tuple is the composition of 0."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"composition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        """Sum of the parts, ``‖I‖``."""
        return sum(self)

    @property
    def length(self) -> int:
        """Number of parts, ``|I|``."""
        return len(self)

    @property
    def factorial(self) -> int:
        return math.prod(math.factorial(p) for p in self)

    def __repr__(self) -> str:
        return f"Composition{tuple(self)}"


@lru_cache(maxsize=None)
def _compositions(n: int) -> tuple[Composition, ...]:
    if n == 0:
        return (Composition(),)
    out = []
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            out.append(Composition((first,) + tuple(rest)))
    return tuple(out)


def compositions(n: int) -> list[Composition]:
    """All ``2^(n-1)`` compositions of ``n`` (just the empty one for ``n = 0``)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_compositions(n))


def unity_projection(I: Composition) -> Composition:
    """Prefix of ``I`` ending with its last part equal to 1 (empty if there is none)."""
    I = tuple(I)
    for i in range(len(I) - 1, -1, -1):
        if I[i] == 1:
            return Composition(I[: i + 1])
    return Composition()


def non_unity_projection(I: Composition) -> Composition:
    """``I`` with every part equal to 1 removed."""
    return Composition(p for p in I if p != 1)


def letter(*indices: int) -> Letter:
    if not indices:
        raise ValueError("a letter needs at least one index")
    return tuple(sorted(indices))


def merge(a: Letter, b: Letter) -> Letter:
    """Bracket of two letters: multiset union."""
    return tuple(sorted(a + b))


def word(*letters) -> AWord:
    """Build a word; integers become single-index letters."""
    return tuple((x,) if isinstance(x, int) else tuple(sorted(x)) for x in letters)


def word_weight(w: AWord) -> int:
    return sum(len(a) for a in w)


def bracket_by_composition(w: AWord, I: Composition) -> AWord:
    """Merge consecutive blocks of ``w`` of sizes ``I_1, ..., I_k`` into single letters."""
    if sum(I) != len(w):
        raise ValueError(f"composition {tuple(I)} does not sum to word length {len(w)}")
    out, pos = [], 0
    for part in I:
        block: Letter = ()
        for a in w[pos : pos + part]:
            block = merge(block, a)
        out.append(block)
        pos += part
    return tuple(out)


def _add(target: ASeries, w: AWord, c: float) -> None:
    v = target.get(w, 0.0) + c
    if v == 0.0:
        target.pop(w, None)
    else:
        target[w] = v


def series_add(*series: ASeries) -> ASeries:
    out: ASeries = {}
    for s in series:
        for w, c in s.items():
            _add(out, w, c)
    return out


def series_scale(s: ASeries, c: float) -> ASeries:
    return {w: c * v for w, v in s.items()} if c != 0 else {}


@lru_cache(maxsize=None)
def _shuffle(u: AWord, v: AWord, quasi: bool) -> tuple[tuple[AWord, float], ...]:
    if not u:
        return ((v, 1.0),)
    if not v:
        return ((u, 1.0),)
    out: ASeries = {}
    for w, c in _shuffle(u[:-1], v, quasi):
        _add(out, w + (u[-1],), c)
    for w, c in _shuffle(u, v[:-1], quasi):
        _add(out, w + (v[-1],), c)
    if quasi:
        for w, c in _shuffle(u[:-1], v[:-1], quasi):
            _add(out, w + (merge(u[-1], v[-1]),), c)
    return tuple(out.items())


def shuffle(u: AWord, v: AWord) -> ASeries:
    """Shuffle product: all interleavings of ``u`` and ``v``."""
    return dict(_shuffle(tuple(u), tuple(v), False))


def quasi_shuffle(u: AWord, v: AWord) -> ASeries:
    """Quasi-shuffle: interleavings plus contractions of letter pairs."""
    return dict(_shuffle(tuple(u), tuple(v), True))


def _bilinear(op, a: ASeries, b: ASeries) -> ASeries:
    out: ASeries = {}
    for u, cu in a.items():
        for v, cv in b.items():
            for w, c in op(u, v).items():
                _add(out, w, cu * cv * c)
    return out


def shuffle_series(a: ASeries, b: ASeries) -> ASeries:
    return _bilinear(shuffle, a, b)


def quasi_shuffle_series(a: ASeries, b: ASeries) -> ASeries:
    return _bilinear(quasi_shuffle, a, b)


def shuffle_antipode(w: AWord) -> ASeries:
    """``A(a_1...a_n) = (-1)^n a_n...a_1``."""
    return {tuple(reversed(w)): float((-1) ** len(w))}


def quasi_shuffle_antipode(w: AWord) -> ASeries:
    """``Â(a_1...a_n) = (-1)^n Σ_{I ∈ C(n)} [a_n...a_1]_I``."""
    rev = tuple(reversed(w))
    sign = float((-1) ** len(w))
    out: ASeries = {}
    for I in compositions(len(w)):
        _add(out, bracket_by_composition(rev, I), sign)
    return out


def hoffman_map(w: AWord) -> ASeries:
    """``Φ_H(w) = Σ_{I ∈ C(|w|)} [w]_I / I!``."""
    out: ASeries = {}
    for I in compositions(len(w)):
        _add(out, bracket_by_composition(tuple(w), I), 1.0 / I.factorial)
    return out


def apply_linear(op, s: ASeries) -> ASeries:
    """Extend a word map ``op: AWord -> ASeries`` linearly to a series."""
    out: ASeries = {}
    for w, c in s.items():
        for v, cv in op(w).items():
            _add(out, v, c * cv)
    return out


def deconcatenations(w: AWord):
    return [(w[:i], w[i:]) for i in range(len(w) + 1)]


def antipode_defect(w: AWord, quasi: bool = False) -> ASeries:
    """``m ∘ (id ⊗ S) ∘ δ`` applied to ``w``; the zero series for non-empty ``w``."""
    prod_ = quasi_shuffle_series if quasi else shuffle_series
    anti = quasi_shuffle_antipode if quasi else shuffle_antipode
    out: ASeries = {}
    for left, right in deconcatenations(tuple(w)):
        for v, c in prod_({left: 1.0}, anti(right)).items():
            _add(out, v, c)
    return out


def single_letter_words(dim: int, max_len: int, min_len: int = 0) -> list[AWord]:
    """All words of single-index letters over ``1..dim`` with lengths in range."""
    out = []
    for n in range(min_len, max_len + 1):
        for idx in product(range(1, dim + 1), repeat=n):
            out.append(tuple((i,) for i in idx))
    return out


@lru_cache(maxsize=None)
def _letters_of_size(dim: int, size: int) -> tuple[Letter, ...]:
    from itertools import combinations_with_replacement

    return tuple(combinations_with_replacement(range(1, dim + 1), size))


def words_up_to_weight(dim: int, max_weight: int) -> list[AWord]:
    """All words over the bracket alphabet with total weight ``<= max_weight``."""
    out: list[AWord] = [()]
    frontier: list[AWord] = [()]
    while frontier:
        nxt = []
        for w in frontier:
            room = max_weight - word_weight(w)
            for size in range(1, room + 1):
                for a in _letters_of_size(dim, size):
                    nxt.append(w + (a,))
        out.extend(nxt)
        frontier = nxt
    return out


_TOKEN = re.compile(r"\[(\d+)\]|(\d)")


def parse_word(text: str) -> AWord:
    """Parse ``"[12]3"`` into ``((1, 2), (3,))``. The empty string is the empty word."""
    text = text.strip()
    if text in ("", "ε", "()"):
        return ()
    pos, letters = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        digits = m.group(1) or m.group(2)
        if "0" in digits:
            raise ValueError(f"letters are 1-based; got 0 in {text!r}")
        letters.append(tuple(sorted(int(c) for c in digits)))
        pos = m.end()
    return tuple(letters)


def format_word(w: AWord) -> str:
    return "".join(str(a[0]) if len(a) == 1 else "[" + "".join(map(str, a)) + "]" for a in w)
