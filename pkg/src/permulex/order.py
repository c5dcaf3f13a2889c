"""Monotonicity of morphisms, position types, and the order on types.

The lexicographically extremal element of ``{phi(w) : w infinite}`` is found
greedily on subsets of *states*: a state ``(a, p)`` means the next letter to
emit is ``phi(a)[p]`` (1-based). Every state has infinite continuations, so
choosing the extremal next letter among the current subset is exact, and since
there are finitely many subsets the greedy run is eventually periodic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .errors import TypeMissing, ValidationError
from .words import Morphism, WordStream, as_word, compare_shifts, compare_words, power, word_str

DEFAULT_PREFIX = 2 ** 14
DEFAULT_DEPTH = 2 ** 12
DEFAULT_PAIRS = 64


class Direction(enum.Enum):
    MIN = "min"
    MAX = "max"


class PositionType(NamedTuple):
    """Position ``index`` (1-based) inside the image of ``letter``."""

    letter: int
    index: int

    def __str__(self):
        return f"({self.letter},{self.index})"


def all_types(morphism: Morphism) -> list[PositionType]:
    return [PositionType(a, p) for a in range(morphism.q) for p in range(1, len(morphism.images[a]) + 1)]


# -- extremal image words -----------------------------------------------------

@dataclass
class ExtremalWord:
    """Greedy extremal image word with an optional eventual-period certificate.

    ``preperiod``/``period`` are set when the greedy subset sequence cycled;
    the word is then ``prefix[:preperiod]`` followed by the repetition of
    ``prefix[preperiod:preperiod+period]``.
    """

    morphism: Morphism
    direction: Direction
    prefix: np.ndarray
    preperiod: int | None = None
    period: int | None = None
    _steps: list = field(default_factory=list, repr=False)

    @property
    def certified(self) -> bool:
        return self.period is not None

    def take(self, n: int) -> np.ndarray:
        """First ``n`` letters; needs a certificate beyond the computed prefix."""
        if n <= len(self.prefix):
            return self.prefix[:n]
        if not self.certified:
            raise ValidationError(f"extremal word known only to depth {len(self.prefix)}")
        out = np.empty(n, dtype=np.uint8)
        pre, per = self.preperiod, self.period
        out[:pre] = self.prefix[:pre]
        cycle = self.prefix[pre:pre + per]
        reps = -(-(n - pre) // per)
        out[pre:] = np.tile(cycle, reps)[: n - pre]
        return out

    def preimage(self, i: int) -> list[int]:
        """A finite word ``x`` with ``phi(x)`` starting with the first ``i+1`` letters."""
        if i < 0:
            return []
        state = self._steps[self._step_index(i)][0][0]
        path = [state]
        for t in range(i, 0, -1):
            state = self._steps[self._step_index(t - 1)][1][state]
            path.append(state)
        path.reverse()
        return [s.letter for s in path if s.index == 1]

    def _step_index(self, i: int) -> int:
        if i < len(self._steps):
            return i
        pre, per = self.preperiod, self.period
        return pre + (i - pre) % per


def _successors(morphism: Morphism, s: PositionType):
    if s.index < len(morphism.images[s.letter]):
        return (PositionType(s.letter, s.index + 1),)
    return tuple(PositionType(b, 1) for b in range(morphism.q))


def extremal_image_word(morphism: Morphism, direction: Direction | str, depth: int) -> ExtremalWord:
    """Prefix of the lexicographic min/max of ``{phi(w) : w infinite}``.

    Runs the subset greedy for at most ``depth`` steps, stopping early once a
    subset repeats (which yields the period certificate).
    """
    if depth < 1:
        raise ValidationError("depth must be >= 1")
    direction = Direction(direction)
    pick = min if direction is Direction.MIN else max
    img = morphism.images
    current = frozenset(PositionType(a, 1) for a in range(morphism.q))
    seen = {}
    letters = []
    steps = []  # (emitting states, parent of each state of the next subset)
    t = 0
    while t < depth:
        if current in seen:
            pre = seen[current]
            word = ExtremalWord(morphism, direction, np.array(letters, dtype=np.uint8), pre, t - pre, steps)
            full = word.take(depth)
            word.prefix = full
            return word
        seen[current] = t
        c = pick(img[s.letter][s.index - 1] for s in current)
        emitting = sorted(s for s in current if img[s.letter][s.index - 1] == c)
        nxt = {}
        for s in emitting:
            for s2 in _successors(morphism, s):
                nxt.setdefault(s2, s)
        steps.append((emitting, nxt))
        letters.append(c)
        current = frozenset(nxt)
        t += 1
    return ExtremalWord(morphism, direction, np.array(letters, dtype=np.uint8), None, None, steps)


# -- monotonicity -------------------------------------------------------------

class Monotonicity(enum.Enum):
    MONOTONE = "monotone"
    NOT_MONOTONE = "not-monotone"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class MonotonicityVerdict:
    status: Monotonicity
    witness: tuple[str, str] | None = None
    depth: int | None = None

    def __bool__(self):
        return self.status is Monotonicity.MONOTONE


def verify_monotonicity_witness(morphism: Morphism, u, v) -> bool:
    """``u < v`` while ``phi(u) >= phi(v)`` (comparable on their common length)."""
    u, v = as_word(u), as_word(v)
    if compare_words(u, v) >= 0:
        return False
    return compare_words(morphism(u), morphism(v)) >= 0


def monotonicity_verdict(morphism: Morphism, depth: int = DEFAULT_DEPTH) -> MonotonicityVerdict:
    """Decide whether ``u < v`` implies ``phi(u) < phi(v)`` for all infinite words.

    For letters ``a < b`` the worst case is ``phi(a)`` followed by the largest
    image word against ``phi(b)`` followed by the smallest one.
    """
    smin = extremal_image_word(morphism, Direction.MIN, depth)
    smax = extremal_image_word(morphism, Direction.MAX, depth)
    img = morphism.images
    certified = smin.certified and smax.certified
    for a, b in combinations(range(morphism.q), 2):
        la, lb = len(img[a]), len(img[b])
        if certified:
            n = max(la + smax.preperiod, lb + smin.preperiod) + math.lcm(smax.period, smin.period)
        else:
            n = depth
        left = np.concatenate((as_word(img[a]), smax.take(max(n - la, 0))))[:n]
        right = np.concatenate((as_word(img[b]), smin.take(max(n - lb, 0))))[:n]
        k = np.flatnonzero(left != right)
        if k.size:
            k = int(k[0])
            if left[k] < right[k]:
                continue
        elif not certified:
            return MonotonicityVerdict(Monotonicity.UNKNOWN, None, depth)
        else:
            k = n - 1
        u = [a] + smax.preimage(k - la)
        v = [b] + smin.preimage(k - lb)
        return MonotonicityVerdict(Monotonicity.NOT_MONOTONE, (word_str(u), word_str(v)), depth)
    return MonotonicityVerdict(Monotonicity.MONOTONE, None, depth)


class PowerSearch(NamedTuple):
    power: int | None
    verdicts: dict


def monotone_power(morphism: Morphism, max_k: int = 5, depth: int = DEFAULT_DEPTH) -> PowerSearch:
    """Least ``k <= max_k`` whose power of ``morphism`` is monotone."""
    if max_k < 1:
        raise ValidationError("max_k must be >= 1")
    verdicts = {}
    for k in range(1, max_k + 1):
        v = monotonicity_verdict(power(morphism, k), depth)
        verdicts[k] = v
        if v.status is Monotonicity.MONOTONE:
            return PowerSearch(k, verdicts)
    return PowerSearch(None, verdicts)


# -- position types -----------------------------------------------------------

def type_arrays(stream: WordStream, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Letters ``a`` and 1-based indices ``p`` of the types of positions ``0..n-1``."""
    u = stream.prefix(n)
    lens = np.array(stream.morphism.lengths, dtype=np.int64)[u]
    ends = np.cumsum(lens)
    pos = np.arange(n)
    j = np.searchsorted(ends, pos, side="right")
    letters = u[j].astype(np.int64)
    index = pos - (ends[j] - lens[j]) + 1
    return letters, index


def position_types(stream: WordStream, n: int) -> list[PositionType]:
    letters, index = type_arrays(stream, n)
    return [PositionType(int(a), int(p)) for a, p in zip(letters.tolist(), index.tolist())]


# -- type order ---------------------------------------------------------------

class Separability(enum.Enum):
    SEPARABLE = "separable"
    INSEPARABLE = "inseparable"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class TypeTable:
    """Types, their order (smallest first) and the separability verdict.

    ``witness`` for an inseparable verdict is ``(n, m, n2)`` with
    ``T^n u < T^m u < T^n2 u`` and ``tau(n) == tau(n2) != tau(m)``.
    ``evidence`` is ``(prefix_len, depth)``.
    """

    types: tuple
    order: tuple | None
    verdict: Separability
    evidence: tuple
    witness: tuple | None = None

    def rank(self, t) -> int:
        return self.order.index(PositionType(*t))


def _occurrences(stream: WordStream, prefix_len: int, types):
    letters, index = type_arrays(stream, prefix_len)
    occ = {}
    for t in types:
        where = np.flatnonzero((letters == t.letter) & (index == t.index))
        if where.size == 0:
            raise TypeMissing(t)
        occ[t] = where.tolist()
    return occ


def _sandwich(stream, inner, outer, depth):
    """First ``(n, m, n2)`` with ``T^n < T^m < T^n2``, m from ``inner``, n, n2 from ``outer``."""
    for m in inner:
        below = above = None
        for n in outer:
            s = compare_shifts(stream, n, m, depth).sign
            if s < 0 and below is None:
                below = n
            elif s > 0 and above is None:
                above = n
            if below is not None and above is not None:
                return (below, m, above)
    return None


def type_order(stream: WordStream, prefix_len: int = DEFAULT_PREFIX, depth: int = DEFAULT_DEPTH,
               pairs_per_type: int = DEFAULT_PAIRS) -> TypeTable:
    """Empirical separability verdict and the induced order on position types.

    For every pair of distinct types, the earliest ``sqrt(pairs_per_type)``
    occurrences of each are compared pairwise at ``depth``. The verdict is
    evidence, not proof.
    """
    types = all_types(stream.morphism)
    occ = _occurrences(stream, prefix_len, types)
    per = max(1, math.isqrt(pairs_per_type))
    sample = {t: occ[t][:per] for t in types}
    relation = {}
    unresolved = False
    for s, t in combinations(types, 2):
        signs = set()
        for n in sample[s]:
            for m in sample[t]:
                signs.add(compare_shifts(stream, n, m, depth).sign)
        if 1 in signs and -1 in signs:
            w = _sandwich(stream, sample[t], sample[s], depth) or _sandwich(stream, sample[s], sample[t], depth)
            return TypeTable(tuple(types), None, Separability.INSEPARABLE, (prefix_len, depth), w)
        if 0 in signs:
            unresolved = True
            continue
        relation[(s, t)] = signs.pop()
    evidence = (prefix_len, depth)
    if unresolved:
        return TypeTable(tuple(types), None, Separability.UNKNOWN, evidence)
    below = {t: 0 for t in types}
    for (s, t), sign in relation.items():
        below[t if sign < 0 else s] += 1
    order = tuple(sorted(types, key=below.__getitem__))
    if sorted(below.values()) != list(range(len(types))):
        return TypeTable(tuple(types), None, Separability.UNKNOWN, evidence)
    return TypeTable(tuple(types), order, Separability.SEPARABLE, evidence)


def verify_inseparable_witness(stream: WordStream, witness, depth: int = DEFAULT_DEPTH) -> bool:
    n, m, n2 = witness
    types = position_types(stream, max(witness) + 1)
    return (types[n] == types[n2] != types[m]
            and compare_shifts(stream, n, m, depth).less
            and compare_shifts(stream, m, n2, depth).less)
