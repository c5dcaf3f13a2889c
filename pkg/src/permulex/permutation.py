"""Finite permutations as rank patterns."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Sequence

import numpy as np

from .errors import DuplicateValue, ValidationError
from .scalars import compare
from .words import WordStream, sort_shifts


@dataclass(frozen=True)
class FinitePermutation:
    """Ranks ``1..n`` of the elements of a window, in window order.

    ``FinitePermutation((3, 2, 4, 1))`` is the pattern written ``(3241)``.
    """

    ranks: tuple

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        object.__setattr__(self, "ranks", ranks)
        if sorted(ranks) != list(range(1, len(ranks) + 1)):
            raise ValidationError(f"not a permutation of 1..{len(ranks)}: {ranks[:16]}")

    def __len__(self):
        return len(self.ranks)

    def __getitem__(self, i):
        return self.ranks[i]

    def restrict(self, start: int, stop: int) -> "FinitePermutation":
        """Pattern of the factor ``[start, stop)``, re-ranked."""
        return pattern_of(self.ranks[start:stop])

    def __str__(self):
        sep = "" if len(self.ranks) < 10 else " "
        return "(" + sep.join(map(str, self.ranks)) + ")"


def pattern_of(values: Sequence) -> FinitePermutation:
    """Rank pattern of distinct natively comparable values (ints, floats, fractions)."""
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0] * len(values)
    for r, i in enumerate(order, 1):
        ranks[i] = r
    return FinitePermutation(tuple(ranks))


def _ranks_from_order(order: list[int], n: int) -> tuple:
    ranks = [0] * n
    for r, i in enumerate(order, 1):
        ranks[i] = r
    return tuple(ranks)


def permutation_from_values(values: Sequence) -> FinitePermutation:
    """``ranks[i] = 1 + #{j : values[j] < values[i]}`` for pairwise distinct scalars.

    Raises DuplicateValue on equal values and UnresolvableComparison when two
    balls cannot be separated.
    """
    values = list(values)
    n = len(values)
    if n == 0:
        return FinitePermutation(())
    order = sorted(range(n), key=cmp_to_key(lambda i, j: compare(values[i], values[j])))
    for k in range(n - 1):
        if compare(values[order[k]], values[order[k + 1]]) == 0:
            raise DuplicateValue(f"positions {order[k]} and {order[k + 1]} hold equal values")
    return FinitePermutation(_ranks_from_order(order, n))


def valid_permutation_prefix(stream: WordStream, n: int, depth: int = 4096) -> FinitePermutation:
    """Ranks of the shifts ``T^0 u, ..., T^(n-1) u`` in lexicographic order."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    order = sort_shifts(stream, range(n), depth)
    return FinitePermutation(_ranks_from_order(order, n))


def _global_ranks(source) -> np.ndarray:
    if isinstance(source, FinitePermutation):
        return np.asarray(source.ranks)
    if isinstance(source, np.ndarray) and source.dtype.kind in "iuf":
        return np.asarray(pattern_of(source.tolist()).ranks)
    return np.asarray(permutation_from_values(list(source)).ranks)


def window_patterns(source, n: int, sample: int) -> Iterable[tuple]:
    ranks = _global_ranks(source)
    if len(ranks) < sample + n - 1:
        raise ValidationError(f"need {sample + n - 1} values for {sample} windows of length {n}")
    windows = np.lib.stride_tricks.sliding_window_view(ranks[: sample + n - 1], n)
    patterns = np.argsort(np.argsort(windows, axis=1), axis=1) + 1
    return map(tuple, patterns.tolist())


def permutation_complexity(source, n: int, sample: int) -> int:
    """Number of distinct patterns among the first ``sample`` windows of length ``n``.

    ``source`` is a value sequence or a FinitePermutation of a long prefix.
    Only a lower bound on the true factor complexity.
    """
    if n < 1 or sample < 1:
        raise ValidationError("n and sample must be positive")
    return len(set(window_patterns(source, n, sample)))


