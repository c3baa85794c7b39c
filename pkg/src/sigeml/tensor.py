"""Dense truncated tensor series over R^d.

A :class:`TruncatedTensor` of dimension ``d`` and depth ``p`` stores one flat
coefficient array per level ``k = 0..p``; level ``k`` has ``d**k`` entries.
Words ``(i1, ..., ik)`` use 1-based letters and are laid out row-major with
``i1`` varying slowest, so the level-``k`` array is ``A.reshape((d,) * k)``
flattened in C order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_ENTRIES = 10**7


def _guard(dim: int, depth: int) -> None:
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    if depth < 0:
        raise ValueError(f"depth must be non-negative, got {depth}")
    if dim**depth > MAX_ENTRIES:
        raise ValueError(f"d^p = {dim}^{depth} exceeds the dense storage guard {MAX_ENTRIES}")


def word_index(word: Sequence[int], dim: int) -> int:
    """Flat position of a 1-based word inside its level array."""
    idx = 0
    for letter in word:
        if not 1 <= letter <= dim:
            raise ValueError(f"letter {letter} outside 1..{dim}")
        idx = idx * dim + (letter - 1)
    return idx


def index_word(index: int, dim: int, level: int) -> tuple[int, ...]:
    letters = []
    for _ in range(level):
        index, r = divmod(index, dim)
        letters.append(r + 1)
    return tuple(reversed(letters))


@dataclass(frozen=True, eq=False)
class TruncatedTensor:
    """Element of the truncated tensor algebra T^p(R^d).

    ``levels[0]`` holds the scalar part as a length-1 array. Arrays are made
    read-only on construction.
    """

    dim: int
    levels: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        depth = len(self.levels) - 1
        _guard(self.dim, depth)
        fixed = []
        for k, arr in enumerate(self.levels):
            a = np.array(arr, dtype=float).reshape(-1)
            if a.size != self.dim**k:
                raise ValueError(f"level {k} has {a.size} entries, expected {self.dim**k}")
            a.flags.writeable = False
            fixed.append(a)
        object.__setattr__(self, "levels", tuple(fixed))

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def level0(self) -> float:
        return float(self.levels[0][0])

    def __getitem__(self, k: int) -> np.ndarray:
        return self.levels[k]

    def coefficient(self, word: Sequence[int]) -> float:
        """Coefficient of ``e_{i1} ⊗ ... ⊗ e_{ik}`` (1-based letters)."""
        word = tuple(word)
        if len(word) > self.depth:
            raise ValueError(f"word of length {len(word)} exceeds depth {self.depth}")
        return float(self.levels[len(word)][word_index(word, self.dim)])

    def level_array(self, k: int) -> np.ndarray:
        """Level ``k`` reshaped to a ``(d,)*k`` array."""
        return self.levels[k].reshape((self.dim,) * k)

    def truncate(self, depth: int) -> "TruncatedTensor":
        """Project to a smaller depth, or zero-pad to a larger one."""
        if depth <= self.depth:
            return TruncatedTensor(self.dim, self.levels[: depth + 1])
        extra = tuple(np.zeros(self.dim**k) for k in range(self.depth + 1, depth + 1))
        return TruncatedTensor(self.dim, self.levels + extra)

    def with_level(self, k: int, values) -> "TruncatedTensor":
        levels = list(self.levels)
        levels[k] = np.asarray(values, dtype=float).reshape(-1)
        return TruncatedTensor(self.dim, tuple(levels))

    def _check(self, other: "TruncatedTensor") -> int:
        if not isinstance(other, TruncatedTensor):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return min(self.depth, other.depth)

    def __add__(self, other: "TruncatedTensor") -> "TruncatedTensor":
        p = self._check(other)
        return TruncatedTensor(self.dim, tuple(self.levels[k] + other.levels[k] for k in range(p + 1)))

    def __sub__(self, other: "TruncatedTensor") -> "TruncatedTensor":
        p = self._check(other)
        return TruncatedTensor(self.dim, tuple(self.levels[k] - other.levels[k] for k in range(p + 1)))

    def __neg__(self) -> "TruncatedTensor":
        return TruncatedTensor(self.dim, tuple(-a for a in self.levels))

    def __mul__(self, scalar: float) -> "TruncatedTensor":
        if isinstance(scalar, TruncatedTensor):
            return NotImplemented
        return TruncatedTensor(self.dim, tuple(scalar * a for a in self.levels))

    __rmul__ = __mul__

    def __matmul__(self, other: "TruncatedTensor") -> "TruncatedTensor":
        return tensor_mul(self, other)

    def __repr__(self) -> str:
        return f"TruncatedTensor(dim={self.dim}, depth={self.depth}, level0={self.level0:g})"

    def allclose(self, other: "TruncatedTensor", atol: float = 1e-12) -> bool:
        return max_abs_diff(self, other) <= atol

    def to_list(self) -> list[list[float]]:
        return [a.tolist() for a in self.levels]


def unit(dim: int, depth: int) -> TruncatedTensor:
    """The unit element 1 = (1, 0, 0, ...)."""
    _guard(dim, depth)
    levels = [np.ones(1)] + [np.zeros(dim**k) for k in range(1, depth + 1)]
    return TruncatedTensor(dim, tuple(levels))


def zeros(dim: int, depth: int) -> TruncatedTensor:
    _guard(dim, depth)
    return TruncatedTensor(dim, tuple(np.zeros(dim**k) for k in range(depth + 1)))


def from_levels(dim: int, levels: Iterable) -> TruncatedTensor:
    return TruncatedTensor(dim, tuple(np.asarray(a, dtype=float).reshape(-1) for a in levels))


def vector(v, depth: int) -> TruncatedTensor:
    """A pure level-1 element (scalar part 0)."""
    v = np.asarray(v, dtype=float).reshape(-1)
    t = zeros(v.size, depth)
    return t.with_level(1, v) if depth >= 1 else t


def tensor_exp(v, depth: int) -> TruncatedTensor:
    """Truncated exponential of a vector: level k is v^{⊗k}/k!."""
    v = np.asarray(v, dtype=float).reshape(-1)
    levels = [np.ones(1)]
    for k in range(1, depth + 1):
        levels.append(np.outer(levels[-1], v).reshape(-1) / k)
    return TruncatedTensor(v.size, tuple(levels))


def tensor_mul(a: TruncatedTensor, b: TruncatedTensor) -> TruncatedTensor:
    """Truncated tensor product; depth of the result is the smaller depth."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    p = min(a.depth, b.depth)
    out = []
    for k in range(p + 1):
        acc = np.zeros(a.dim**k)
        for i in range(k + 1):
            ai, bj = a.levels[i], b.levels[k - i]
            if not ai.any() or not bj.any():
                continue
            acc += np.outer(ai, bj).reshape(-1)
        out.append(acc)
    return TruncatedTensor(a.dim, tuple(out))


def tensor_inverse(a: TruncatedTensor) -> TruncatedTensor:
    """Group inverse of an element with scalar part 1, via sum_n (1 - a)^n."""
    if a.level0 != 1.0:
        raise ValueError(f"inverse requires level0 == 1, got {a.level0}")
    one = unit(a.dim, a.depth)
    x = one - a  # scalar part 0, so x^{⊗n} vanishes for n > depth
    result = one
    power = one
    for _ in range(a.depth):
        power = tensor_mul(power, x)
        result = result + power
    return result


def gamma_involution(a: TruncatedTensor) -> TruncatedTensor:
    """Multiply level k by (-1)^k."""
    return TruncatedTensor(a.dim, tuple(((-1) ** k) * lev for k, lev in enumerate(a.levels)))


def tensor_norm(a: TruncatedTensor, k: int) -> float:
    """Euclidean norm of level ``k``."""
    if not 0 <= k <= a.depth:
        raise ValueError(f"level {k} outside 0..{a.depth}")
    return float(np.linalg.norm(a.levels[k]))


def max_abs_diff(a: TruncatedTensor, b: TruncatedTensor) -> float:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    p = min(a.depth, b.depth)
    return max(float(np.max(np.abs(a.levels[k] - b.levels[k]))) for k in range(p + 1))


def tensor_to_json(a: TruncatedTensor) -> dict:
    return {"dim": a.dim, "depth": a.depth, "levels": a.to_list()}


def tensor_from_json(obj: dict) -> TruncatedTensor:
    dim, depth, levels = int(obj["dim"]), int(obj["depth"]), obj["levels"]
    if len(levels) != depth + 1:
        raise ValueError(f"expected {depth + 1} levels, got {len(levels)}")
    return from_levels(dim, levels)
