"""Morphisms, their fixed points, and lexicographic comparison of shifts.

Letters are the integers ``0..q-1`` and words are ``numpy.uint8`` arrays, so
an alphabet has at most 256 letters. Infinite words are indexed from 0;
positions inside a finite image ``phi(a)`` are indexed from 1.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ComparisonExhausted, NonExtensible, PeriodicWord, ValidationError

DEFAULT_DEPTH_CAP = 2 ** 20


def as_word(w) -> np.ndarray:
    """Coerce a digit string, sequence of ints or array to a letter array."""
    if isinstance(w, np.ndarray):
        return w.astype(np.uint8, copy=False)
    if isinstance(w, str):
        return np.frombuffer(w.encode("ascii"), dtype=np.uint8) - ord("0")
    return np.asarray(list(w), dtype=np.uint8)


def word_str(w) -> str:
    """Digit-string form of a word (alphabets up to 10 letters)."""
    return "".join(str(int(c)) for c in w)


@dataclass(frozen=True)
class Morphism:
    """A non-erasing substitution on ``{0, ..., q-1}``.

    ``images[a]`` is the image of letter ``a``. Construct from digit strings
    with :meth:`from_strings`.
    """

    q: int
    images: tuple
    name: str | None = None

    def __post_init__(self):
        images = tuple(tuple(int(c) for c in img) for img in self.images)
        object.__setattr__(self, "images", images)
        if self.q < 1 or self.q > 256:
            raise ValidationError(f"alphabet size must be in 1..256, got {self.q}")
        if len(images) != self.q:
            raise ValidationError(f"expected {self.q} images, got {len(images)}")
        for a, img in enumerate(images):
            if not img:
                raise ValidationError(f"image of letter {a} is empty")
            bad = [c for c in img if not 0 <= c < self.q]
            if bad:
                raise ValidationError(f"image of letter {a} uses letter {bad[0]} >= q={self.q}")

    @classmethod
    def from_strings(cls, images: Sequence[str], name: str | None = None) -> "Morphism":
        return cls(len(images), tuple(tuple(int(c) for c in img) for img in images), name)

    @property
    def lengths(self) -> tuple:
        return tuple(len(img) for img in self.images)

    def __call__(self, word) -> np.ndarray:
        """Apply the morphism letter by letter."""
        return _apply(self, as_word(word))

    def power(self, k: int) -> "Morphism":
        return power(self, k)

    def __str__(self):
        body = ", ".join(f"{a}->{word_str(img)}" for a, img in enumerate(self.images))
        return f"{self.name or 'morphism'}[{body}]"


def _tables(m: Morphism):
    flat = np.fromiter((c for img in m.images for c in img), dtype=np.uint8)
    lens = np.array(m.lengths, dtype=np.int64)
    offsets = np.concatenate(([0], np.cumsum(lens)[:-1]))
    return flat, lens, offsets


def _apply(m: Morphism, word: np.ndarray) -> np.ndarray:
    if word.size == 0:
        return word.copy()
    flat, lens, offsets = _tables(m)
    wl = lens[word]
    starts = np.cumsum(wl) - wl
    src = np.repeat(offsets[word] - starts, wl)
    return flat[src + np.arange(src.size)]


def power(morphism: Morphism, k: int) -> Morphism:
    """The ``k``-th iterate of ``morphism``."""
    if k < 1:
        raise ValidationError(f"power must be >= 1, got {k}")
    images = [np.asarray(img, dtype=np.uint8) for img in morphism.images]
    for _ in range(k - 1):
        images = [_apply(morphism, img) for img in images]
    name = morphism.name if k == 1 else (f"{morphism.name}^{k}" if morphism.name else None)
    return Morphism(morphism.q, tuple(tuple(int(c) for c in img) for img in images), name)


class WordStream:
    """Lazily grown fixed point of ``morphism`` starting with ``seed``.

    The cache is extended by applying the morphism to the cached prefix, which
    is again a prefix of the fixed point. Reads after growth are lock free.
    """

    def __init__(self, morphism: Morphism, seed: int = 0):
        if not 0 <= seed < morphism.q:
            raise ValidationError(f"seed {seed} outside alphabet of size {morphism.q}")
        img = morphism.images[seed]
        if img[0] != seed:
            raise NonExtensible(f"image of seed {seed} does not start with {seed}")
        if len(img) < 2:
            raise NonExtensible(f"image of seed {seed} has length 1; the fixed point is finite")
        self.morphism = morphism
        self.seed = seed
        self._cache = np.asarray(img, dtype=np.uint8)
        self._lock = threading.Lock()

    def __repr__(self):
        return f"WordStream({self.morphism}, seed={self.seed}, cached={len(self._cache)})"

    def ensure(self, n: int) -> None:
        if n <= len(self._cache):
            return
        with self._lock:
            cache = self._cache
            while len(cache) < n:
                cache = _apply(self.morphism, cache)
            self._cache = cache

    def prefix(self, n: int) -> np.ndarray:
        """First ``n`` letters (a read-only view)."""
        if n < 0:
            raise ValidationError("prefix length must be nonnegative")
        self.ensure(n)
        view = self._cache[:n]
        view.flags.writeable = False
        return view

    def __getitem__(self, i: int) -> int:
        self.ensure(i + 1)
        return int(self._cache[i])

    def check_aperiodic(self, window: int = 4096, max_period: int = 256) -> None:
        """Raise PeriodicWord if the tail of a long prefix is periodic."""
        if looks_periodic(self.prefix(2 * window + max_period), window, max_period):
            raise PeriodicWord(f"fixed point of {self.morphism} looks ultimately periodic")


def fixed_point_prefix(stream: WordStream, n: int) -> np.ndarray:
    return stream.prefix(n)


def looks_periodic(word: np.ndarray, window: int, max_period: int) -> int:
    """Smallest ``p <= max_period`` such that the last ``window`` letters have period ``p``, else 0."""
    n = len(word)
    tail = word[n - window - max_period:]
    for p in range(1, max_period + 1):
        if np.array_equal(tail[p:p + window], tail[:window]):
            return p
    return 0


@dataclass(frozen=True)
class ShiftComparison:
    """Outcome of comparing ``T^i u`` with ``T^j u``.

    ``sign`` is -1 (Less), +1 (Greater) or 0 (Unresolved). ``agreement`` is the
    length of the common prefix found, which for unresolved results equals the
    depth examined.
    """

    sign: int
    agreement: int

    @property
    def resolved(self) -> bool:
        return self.sign != 0

    @property
    def less(self) -> bool:
        return self.sign < 0

    @property
    def greater(self) -> bool:
        return self.sign > 0


def first_difference(a: np.ndarray, b: np.ndarray) -> int:
    """Index of the first differing letter of two equal-length arrays, or -1."""
    diff = np.flatnonzero(a != b)
    return int(diff[0]) if diff.size else -1


def compare_words(u, v) -> int:
    """Lexicographic comparison of finite words; 0 if one is a prefix of the other."""
    u, v = as_word(u), as_word(v)
    n = min(len(u), len(v))
    k = first_difference(u[:n], v[:n])
    if k < 0:
        return 0
    return -1 if u[k] < v[k] else 1


def compare_shifts(stream: WordStream, i: int, j: int, max_depth: int) -> ShiftComparison:
    """Compare ``T^i u`` and ``T^j u`` on at most ``max_depth`` letters."""
    if i == j:
        raise ValidationError("cannot compare a shift with itself")
    if max_depth < 1:
        raise ValidationError("max_depth must be >= 1")
    w = stream.prefix(max(i, j) + max_depth)
    k = first_difference(w[i:i + max_depth], w[j:j + max_depth])
    if k < 0:
        return ShiftComparison(0, max_depth)
    return ShiftComparison(-1 if w[i + k] < w[j + k] else 1, k)


def compare_shifts_escalating(stream: WordStream, i: int, j: int, depth: int = 64,
                              cap: int = DEFAULT_DEPTH_CAP) -> ShiftComparison:
    """Like :func:`compare_shifts`, doubling the depth until resolved or ``cap`` is hit."""
    while True:
        r = compare_shifts(stream, i, j, depth)
        if r.resolved:
            return r
        if depth >= cap:
            raise ComparisonExhausted(i, j, depth)
        depth = min(2 * depth, cap)


def shift_keys(stream: WordStream, positions, depth: int) -> list:
    """Byte strings ``u[i:i+depth]`` whose ordering is the lexicographic shift order."""
    positions = np.asarray(positions, dtype=np.int64)
    w = stream.prefix(int(positions.max()) + depth if positions.size else 0)
    buf = w.tobytes()
    return [buf[i:i + depth] for i in positions.tolist()]


def sort_shifts(stream: WordStream, positions, depth: int, start_depth: int = 32) -> list:
    """Positions sorted by their shifts, with depth escalation up to ``depth``.

    Only groups of positions still tied at the current depth are re-sorted at
    twice the depth. Raises ComparisonExhausted if two shifts still agree on
    ``depth`` letters.
    """
    positions = list(positions)
    if not positions:
        return []
    stream.ensure(max(positions) + depth)
    buf = stream.prefix(max(positions) + depth).tobytes()

    def refine(group, lo, d):
        # ``group`` agrees on its first ``lo`` letters
        group.sort(key=lambda i: buf[i + lo:i + d])
        out, k = [], 0
        while k < len(group):
            key = buf[group[k] + lo:group[k] + d]
            e = k + 1
            while e < len(group) and buf[group[e] + lo:group[e] + d] == key:
                e += 1
            if e - k == 1:
                out.append(group[k])
            elif d >= depth:
                raise ComparisonExhausted(group[k], group[k + 1], d)
            else:
                out.extend(refine(group[k:e], d, min(2 * d, depth)))
            k = e
        return out

    return refine(positions, 0, min(start_depth, depth))
