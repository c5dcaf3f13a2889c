"""Empirical frequency evidence for unique ergodicity.

Everything here is a finite-prefix measurement. Verdicts carry the window,
prefix and tolerance they were computed with and are never proofs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import FactorAbsent, ValidationError
from .words import WordStream, as_word, compare_shifts_escalating, word_str


def _letters(source, n: int) -> np.ndarray:
    if isinstance(source, WordStream):
        return source.prefix(n)
    w = as_word(source)
    if len(w) < n:
        raise ValidationError(f"source has only {len(w)} letters, need {n}")
    return w[:n]


def occurrences(word: np.ndarray, factor) -> np.ndarray:
    """Boolean array marking the start positions of ``factor`` in ``word``."""
    f = as_word(factor)
    k = len(f)
    n = len(word) - k + 1
    if n <= 0:
        return np.zeros(0, dtype=bool)
    hit = np.ones(n, dtype=bool)
    for t, c in enumerate(f):
        hit &= word[t:t + n] == c
    return hit


@dataclass(frozen=True)
class FrequencyEnvelope:
    """Min and max occurrence ratio of ``factor`` over all windows of a prefix."""

    factor: str
    window: int
    prefix: int
    min_freq: Fraction
    max_freq: Fraction

    @property
    def width(self) -> float:
        return float(self.max_freq - self.min_freq)

    @property
    def midpoint(self) -> float:
        return float(self.min_freq + self.max_freq) / 2

    def contains(self, x) -> bool:
        return self.min_freq <= x <= self.max_freq


def factor_frequency_envelope(source, factor, window: int, prefix: int) -> FrequencyEnvelope:
    """Occurrences of ``factor`` starting in ``u[i:i+window]``, divided by ``window``,
    minimized and maximized over ``0 <= i <= prefix - window``.

    An occurrence may run past the end of its window, so a finite source must
    hold ``prefix + len(factor) - 1`` letters for the last window to count fully.
    """
    if window > prefix or window < 1:
        raise ValidationError("need 1 <= window <= prefix")
    f = as_word(factor)
    if len(f) > window:
        raise ValidationError("factor longer than the window")
    u = _letters(source, prefix + len(f) - 1)
    hits = occurrences(u, f).astype(np.int64)
    cs = np.concatenate(([0], np.cumsum(hits)))
    starts = np.arange(prefix - window + 1)
    counts = cs[starts + window] - cs[starts]
    return FrequencyEnvelope(word_str(f), window, prefix,
                             Fraction(int(counts.min()), window), Fraction(int(counts.max()), window))


class Ergodicity(enum.Enum):
    LIKELY_ERGODIC = "likely-ergodic"
    SUSPECT = "suspect"
    ZERO_FREQUENCY = "zero-frequency"


@dataclass(frozen=True)
class ErgodicVerdict:
    status: Ergodicity
    window: int
    prefix: int
    tol: float
    witness: str | None = None
    envelope: FrequencyEnvelope | None = None


def factors_of(word: np.ndarray, length: int) -> list[str]:
    """Distinct factors of a given length, in lexicographic order."""
    if length > len(word):
        return []
    windows = np.lib.stride_tricks.sliding_window_view(word, length)
    uniq = np.unique(windows, axis=0)
    return [word_str(r) for r in uniq]


def ergodic_word_verdict(source, max_factor_len: int, window: int, prefix: int, tol: float) -> ErgodicVerdict:
    """Check that every factor up to ``max_factor_len`` has a narrow, nonzero envelope.

    Factors are scanned by length, then lexicographically. The first factor
    whose envelope is wider than ``tol`` gives ``SUSPECT``; otherwise the first
    factor occurring in the prefix but missing from some window gives
    ``ZERO_FREQUENCY``.
    """
    if min(max_factor_len, window, prefix) < 1 or tol <= 0:
        raise ValidationError("parameters must be positive")
    u = _letters(source, prefix + max_factor_len - 1)
    for length in range(1, max_factor_len + 1):
        for f in factors_of(u[:prefix], length):
            env = factor_frequency_envelope(u, f, window, prefix)
            if env.width > tol:
                return ErgodicVerdict(Ergodicity.SUSPECT, window, prefix, tol, f, env)
            if env.min_freq == 0:
                return ErgodicVerdict(Ergodicity.ZERO_FREQUENCY, window, prefix, tol, f, env)
    return ErgodicVerdict(Ergodicity.LIKELY_ERGODIC, window, prefix, tol)


def _codes(u: np.ndarray, n: int, q: int):
    """Base-``q`` integer code of every length-``n`` factor; codes order like the words."""
    windows = np.lib.stride_tricks.sliding_window_view(u, n)
    if q ** n < 2 ** 63:
        weights = (q ** np.arange(n - 1, -1, -1, dtype=np.int64)).astype(np.int64)
        return windows.astype(np.int64) @ weights
    return np.array([bytes(r) for r in windows], dtype=object)


def canonical_value_bracket(source, k: int, n: int, prefix: int, q: int | None = None) -> tuple[Fraction, Fraction]:
    """Total frequency of length-``n`` factors strictly below, and up to, ``u[k:k+n]``."""
    if k + n > prefix:
        raise ValidationError("need k + n <= prefix")
    u = _letters(source, prefix)
    if q is None:
        q = source.morphism.q if isinstance(source, WordStream) else int(u.max()) + 1
    codes = _codes(u, n, q)
    target = codes[k]
    total = len(codes)
    below = int(np.count_nonzero(codes < target))
    upto = int(np.count_nonzero(codes <= target))
    return Fraction(below, total), Fraction(upto, total)


def canonical_value_estimate(source, k: int, n: int, prefix: int) -> Fraction:
    """Sum of empirical frequencies of length-``n`` factors ``<= u[k:k+n]``."""
    return canonical_value_bracket(source, k, n, prefix)[1]


@dataclass(frozen=True)
class MaxMinScan:
    max_candidate_for_w: int | None
    min_candidate_for_v: int | None
    max_stable: bool
    min_stable: bool


def _extreme(stream: WordStream, positions: np.ndarray, depth: int, pick):
    buf = stream.prefix(int(positions.max()) + depth).tobytes()
    keys = {int(i): buf[i:i + depth] for i in positions.tolist()}
    best_key = pick(keys.values())
    tied = [i for i in positions.tolist() if keys[i] == best_key]
    best = tied[0]
    want = 1 if pick is max else -1
    for i in tied[1:]:
        # shifts agreeing at ``depth`` are split with deeper comparisons
        if compare_shifts_escalating(stream, i, best, depth).sign == want:
            best = i
    return best


def maxmin_scan(stream: WordStream, w, v, prefix: int, depth: int = 4096) -> MaxMinScan:
    """Empirical lexicographic max over shifts starting with ``w`` and min over those
    starting with ``v``, among start positions below ``prefix``.

    A side is *stable* when its candidate was already found in the first half
    of the scan.
    """
    u = stream.prefix(prefix + max(len(w), len(v)))
    pos_w = np.flatnonzero(occurrences(u, w)[:prefix])
    pos_v = np.flatnonzero(occurrences(u, v)[:prefix])
    if pos_w.size == 0:
        raise FactorAbsent(f"factor {word_str(as_word(w))} absent from prefix {prefix}")
    if pos_v.size == 0:
        raise FactorAbsent(f"factor {word_str(as_word(v))} absent from prefix {prefix}")
    best_w = _extreme(stream, pos_w, depth, max)
    best_v = _extreme(stream, pos_v, depth, min)
    half = prefix // 2
    return MaxMinScan(best_w, best_v, best_w < half, best_v < half)


def synthetic_block_word(blocks: int) -> np.ndarray:
    """``0 1 00 11 0000 1111 ...``: blocks of doubling length, no uniform frequencies."""
    parts = []
    for k in range(blocks):
        parts.append(np.zeros(2 ** k, dtype=np.uint8))
        parts.append(np.ones(2 ** k, dtype=np.uint8))
    return np.concatenate(parts)
