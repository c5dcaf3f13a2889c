"""Interval morphisms and the canonical representative of a morphic permutation.

The letter intervals ``I_a`` partition [0, 1] by letter frequency; the type
intervals ``J_(a,p)`` partition it again, in the order of position types, with
lengths ``mu_a / theta``. The affine bijection ``psi_(a,p): I_a -> J_(a,p)``
sends a value to the value of position ``p`` in the image of its letter.
Iterating ``x -> psi_(a,1)(x), ..., psi_(a,|phi(a)|)(x)`` from the fixed
point of ``psi_(seed,1)`` yields the canonical sequence.
"""

from __future__ import annotations

import bisect
import enum
from functools import cmp_to_key
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import EndpointHit, NotSeparable, ValidationError
from .order import PositionType, Separability, TypeTable
from .permutation import FinitePermutation, permutation_from_values, valid_permutation_prefix
from .scalars import Scalar, compare, is_exact
from .spectral import SpectralData
from .words import Morphism, WordStream


class Orientation(enum.Enum):
    HALF_OPEN_RIGHT = "[)"
    HALF_OPEN_LEFT = "(]"
    INTERIOR = "()"


class Interval(NamedTuple):
    lo: Scalar
    hi: Scalar

    @property
    def length(self):
        return self.hi - self.lo

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class IntervalLayout:
    """Letter intervals ``I_a`` and type intervals ``J`` (smallest type first)."""

    letter_intervals: tuple
    type_intervals: tuple  # ((PositionType, Interval), ...) in type order
    orientation: Orientation = Orientation.HALF_OPEN_RIGHT

    def J(self, a: int, p: int) -> Interval:
        key = PositionType(a, p)
        for t, iv in self.type_intervals:
            if t == key:
                return iv
        raise KeyError(key)

    def I(self, a: int) -> Interval:
        return self.letter_intervals[a]

    @property
    def order(self) -> tuple:
        return tuple(t for t, _ in self.type_intervals)


def _partial_sums(lengths):
    ends = [Fraction(0)]
    for x in lengths:
        ends.append(ends[-1] + x)
    return ends


def build_layout(spectral: SpectralData, type_table: TypeTable, morphism: Morphism,
                 order: Sequence | None = None) -> IntervalLayout:
    """Intervals from letter frequencies and the type order.

    ``order`` overrides the table's type order (used for negative controls);
    it must still group the types by the letter they produce, in letter order.
    """
    if order is None:
        if type_table.verdict is not Separability.SEPARABLE:
            raise NotSeparable(f"type order is {type_table.verdict.value}", type_table.witness)
        order = type_table.order
    order = tuple(PositionType(*t) for t in order)
    expected = {PositionType(a, p) for a in range(morphism.q) for p in range(1, len(morphism.images[a]) + 1)}
    if set(order) != expected or len(order) != len(expected):
        raise ValidationError("type order does not list every position type exactly once")
    produced = [produced_letter(morphism, t) for t in order]
    if produced != sorted(produced):
        raise ValidationError("types producing each letter must be contiguous and follow letter order")

    mu, theta = spectral.mu, spectral.theta
    i_ends = _partial_sums(mu)
    i_ends[-1] = Fraction(1) if spectral.exact else i_ends[-1]
    letter_intervals = tuple(Interval(i_ends[a], i_ends[a + 1]) for a in range(morphism.q))

    lengths = [mu[t.letter] / theta for t in order]
    j_ends = _partial_sums(lengths)
    # snap the ends that coincide with letter boundaries
    k = 0
    for a in range(morphism.q):
        k += produced.count(a)
        if spectral.exact and compare(j_ends[k], i_ends[a + 1]) != 0:
            raise ValidationError(f"type intervals of letter {a} do not tile I_{a}")
        j_ends[k] = i_ends[a + 1]
    type_intervals = tuple((t, Interval(j_ends[i], j_ends[i + 1])) for i, t in enumerate(order))
    return IntervalLayout(letter_intervals, type_intervals)


@dataclass(frozen=True)
class AffineMap:
    """``x -> slope * (x - x1) + y1``."""

    x1: Scalar
    y1: Scalar
    slope: Scalar

    def __call__(self, x):
        return self.slope * (x - self.x1) + self.y1

    @classmethod
    def between(cls, src: Interval, dst: Interval) -> "AffineMap":
        return cls(src.lo, dst.lo, (dst.hi - dst.lo) / (src.hi - src.lo))

    def fixed_point(self):
        return (self.y1 - self.slope * self.x1) / (1 - self.slope)


@dataclass(frozen=True)
class IntervalMorphism:
    layout: IntervalLayout
    morphism: Morphism
    seed: int
    maps: dict
    start: Scalar
    theta: Scalar

    def letter_of(self, x) -> int:
        """Letter ``a`` with ``x`` in ``I_a`` under the layout's orientation."""
        bounds = [iv.hi for iv in self.layout.letter_intervals[:-1]]
        orient = self.layout.orientation
        if orient is Orientation.HALF_OPEN_LEFT:
            a = bisect.bisect_left(bounds, x)
        else:
            a = bisect.bisect_right(bounds, x)
        if orient is Orientation.INTERIOR and is_exact(x):
            for b in (a - 1, a):
                if 0 <= b < len(bounds) and compare(bounds[b], x) == 0:
                    raise EndpointHit(f"value {x} sits on the boundary of I_{b} and I_{b + 1}")
        return a

    def image(self, x, letter: int | None = None) -> list:
        a = self.letter_of(x) if letter is None else letter
        return [self.maps[(a, p)](x) for p in range(1, len(self.morphism.images[a]) + 1)]


def produced_letter(morphism: Morphism, t) -> int:
    """The letter ``phi(a)[p]`` sitting at a position of type ``(a, p)``."""
    return morphism.images[t[0]][t[1] - 1]


def _seed_orientation(layout: IntervalLayout, morphism: Morphism, seed: int) -> Orientation:
    own = [t for t in layout.order if produced_letter(morphism, t) == seed]
    first = PositionType(seed, 1)
    if own[-1] == first:
        return Orientation.HALF_OPEN_LEFT
    if own[0] == first:
        return Orientation.HALF_OPEN_RIGHT
    return Orientation.INTERIOR


def build_interval_morphism(layout: IntervalLayout, morphism: Morphism, seed: int,
                            theta: Scalar | None = None) -> IntervalMorphism:
    """Affine maps, starting value and orientation.

    The start is the fixed point of ``psi_(seed,1)``; it is the upper end of
    ``J_(seed,1)`` exactly when ``(seed,1)`` is the largest type of its letter,
    the lower end when it is the smallest, and interior otherwise.
    """
    if morphism.images[seed][0] != seed:
        raise ValidationError(f"image of seed {seed} does not start with {seed}")
    maps = {}
    for t, J in layout.type_intervals:
        maps[(t.letter, t.index)] = AffineMap.between(layout.I(t.letter), J)
    start = maps[(seed, 1)].fixed_point()
    orientation = _seed_orientation(layout, morphism, seed)
    J1 = layout.J(seed, 1)
    if is_exact(start):
        at_hi = compare(start, J1.hi) == 0
        at_lo = compare(start, J1.lo) == 0
        if at_hi != (orientation is Orientation.HALF_OPEN_LEFT) or at_lo != (orientation is Orientation.HALF_OPEN_RIGHT):
            raise ValidationError("start value disagrees with the type order")
        if at_hi:
            start = J1.hi
        elif at_lo:
            start = J1.lo
    if theta is None:
        I = layout.I(seed)
        theta = (I.hi - I.lo) / (J1.hi - J1.lo)
    layout = replace(layout, orientation=orientation)
    return IntervalMorphism(layout, morphism, seed, maps, start, theta)


@dataclass
class CanonicalSequence:
    """Materialized prefix of the fixed point of an interval morphism.

    ``letters[i]`` is the letter interval ``values[i]`` was found in.
    """

    source: IntervalMorphism
    values: list = field(default_factory=list)
    letters: list = field(default_factory=list)
    _cursor: int = 1

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def extend(self, n: int) -> None:
        """Grow by block substitution until at least ``n`` values exist."""
        im = self.source
        if not self.values:
            x = im.start
            a = im.letter_of(x)
            if a != im.seed:
                raise ValidationError(f"start {x} is not in I_{im.seed}")
            block = [x] + im.image(x, a)[1:]
            self.values.extend(block)
            self.letters.append(a)
        while len(self.values) < n:
            x = self.values[self._cursor]
            a = im.letter_of(x)
            self.letters.append(a)
            self.values.extend(im.image(x, a))
            self._cursor += 1
        # letters of the values produced so far but not yet expanded
        while len(self.letters) < min(n, len(self.values)):
            self.letters.append(im.letter_of(self.values[len(self.letters)]))


def canonical_prefix(im: IntervalMorphism, n: int) -> CanonicalSequence:
    """First ``n`` values of the canonical sequence."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    seq = CanonicalSequence(im)
    seq.extend(n)
    del seq.values[n:]
    del seq.letters[n:]
    return seq


class VerificationReport(NamedTuple):
    agree: bool
    first_mismatch: tuple | None
    n: int


def first_discordant_pair(by_value: FinitePermutation, by_shift: FinitePermutation):
    """A pair ``(i, j)`` ordered one way by shifts and the other by values, or None."""
    n = len(by_value)
    o_val = sorted(range(n), key=by_value.ranks.__getitem__)
    o_shift = sorted(range(n), key=by_shift.ranks.__getitem__)
    for v, s in zip(o_val, o_shift):
        if v != s:
            return (s, v)
    return None


def verify_against_shifts(im: IntervalMorphism, stream: WordStream, n: int, depth: int = 4096) -> VerificationReport:
    """Compare the rank pattern of the canonical prefix with the shift order."""
    if stream.morphism != im.morphism or stream.seed != im.seed:
        raise ValidationError("stream and interval morphism come from different morphisms")
    values = canonical_prefix(im, n).values
    by_value = permutation_from_values(values)
    by_shift = valid_permutation_prefix(stream, n, depth)
    if by_value == by_shift:
        return VerificationReport(True, None, n)
    return VerificationReport(False, first_discordant_pair(by_value, by_shift), n)


class IntervalFrequency(NamedTuple):
    interval: tuple
    frequency: Fraction
    expected: Scalar
    deviation: float


_CLOSURES = {"right": (False, True), "left": (True, False), "open": (False, False), "both": (True, True)}


def _count_in(sorted_values, t1, t2, closed: str) -> int:
    lo_closed, hi_closed = _CLOSURES[closed]
    lo = (bisect.bisect_left if lo_closed else bisect.bisect_right)(sorted_values, t1)
    hi = (bisect.bisect_right if hi_closed else bisect.bisect_left)(sorted_values, t2)
    return max(hi - lo, 0)


def canonicality_report(seq, n_elements: int, intervals, closed: str = "right") -> list[IntervalFrequency]:
    """Empirical frequency of the first ``n_elements`` values in each interval.

    ``closed`` picks the interval type: ``"right"`` for ``(t1, t2]``,
    ``"left"``, ``"open"`` or ``"both"``.
    """
    values = seq.values if isinstance(seq, CanonicalSequence) else list(seq)
    values = values[:n_elements]
    if len(values) < n_elements:
        raise ValidationError(f"only {len(values)} values available")
    if all(isinstance(v, (int, Fraction)) for v in values):
        ordered = sorted(values)
    else:
        ordered = sorted(values, key=cmp_to_key(compare))
    out = []
    for t1, t2 in intervals:
        if not (compare(0, t1) <= 0 and compare(t1, t2) < 0 and compare(t2, 1) <= 0):
            raise ValidationError(f"need 0 <= t1 < t2 <= 1, got ({t1}, {t2})")
        c = _count_in(ordered, t1, t2, closed)
        freq = Fraction(c, n_elements)
        expected = t2 - t1
        out.append(IntervalFrequency((t1, t2), freq, expected, abs(float(freq) - float(expected))))
    return out
