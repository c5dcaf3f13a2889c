"""Rotation sequences ``{rho + k*sigma}`` and the doubling map that generates them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import NamedTuple

from .errors import ValidationError
from .permutation import FinitePermutation, permutation_from_values, valid_permutation_prefix
from .scalars import Ball, Quadratic, Scalar, as_scalar, compare, frac_part

GOLDEN_SMALL = Quadratic(Fraction(3, 2), Fraction(-1, 2), 5)  # (3 - sqrt 5) / 2


@dataclass(frozen=True)
class SturmianParams:
    sigma: Scalar
    rho: Scalar = Fraction(0)

    def __post_init__(self):
        sigma, rho = as_scalar(self.sigma), as_scalar(self.rho)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "rho", rho)
        if isinstance(sigma, Fraction) or (isinstance(sigma, Quadratic) and sigma.b == 0):
            raise ValidationError(f"sigma must be irrational, got {sigma}")
        if not (compare(sigma, 0) > 0 and compare(sigma, 1) < 0):
            raise ValidationError("sigma must lie in (0, 1)")
        if not (compare(rho, 0) >= 0 and compare(rho, 1) < 0):
            raise ValidationError("rho must lie in [0, 1)")


def rotation_sequence(params: SturmianParams, n: int) -> list:
    """``[{rho + k*sigma} for k in range(n)]``, computed exactly by repeated addition."""
    if n < 0:
        raise ValidationError("n must be >= 0")
    out = []
    x = params.rho
    for _ in range(n):
        out.append(x)
        x = x + params.sigma
        if compare(x, 1) >= 0:
            x = x - 1
    return out


def doubling_step(x, params: SturmianParams) -> tuple:
    """``({2x - rho}, {2x - rho + sigma})``: sends ``beta_n`` to ``(beta_2n, beta_2n+1)``."""
    if not (compare(x, 0) >= 0 and compare(x, 1) < 0):
        raise ValidationError(f"x must lie in [0, 1), got {x}")
    y = 2 * x - params.rho
    return frac_part(y), frac_part(y + params.sigma)


def doubling_sequence(params: SturmianParams, n: int) -> list:
    """First ``n`` terms of the fixed point of the doubling map, grown from ``rho``."""
    if n < 1:
        return []
    values = list(doubling_step(params.rho, params))
    cursor = 1
    while len(values) < n:
        values.extend(doubling_step(values[cursor], params))
        cursor += 1
    return values[:n]


def distinct_gaps(values) -> list:
    """Distinct gaps between circularly consecutive points of ``values`` on [0, 1).

    Ball gaps whose enclosures overlap count as one gap.
    """
    pts = sorted(values, key=cmp_to_key(compare))
    gaps = [b - a for a, b in zip(pts, pts[1:])]
    gaps.append(1 - pts[-1] + pts[0])
    if any(isinstance(g, Ball) for g in gaps):
        balls = sorted((Ball.from_value(g) if not isinstance(g, Ball) else g for g in gaps), key=float)
        out = []
        for g in balls:
            if not out or not out[-1].overlaps(g):
                out.append(g)
        return out
    return sorted(set(gaps), key=cmp_to_key(compare))


class CrossCheck(NamedTuple):
    n: int
    agree: bool
    shift_mismatch: int | None
    canonical_mismatch: int | None


def _first_mismatch(p: FinitePermutation, q: FinitePermutation):
    for i, (a, b) in enumerate(zip(p.ranks, q.ranks)):
        if a != b:
            return i
    return None


def sturmian_cross_check(n: int, params: SturmianParams | None = None, depth: int = 4096) -> CrossCheck:
    """Compare the rotation permutation with the squared Fibonacci word.

    The rank pattern of ``rotation_sequence`` is checked against the shift
    order of the fixed point of ``0 -> 010, 1 -> 01`` and against the ranks of
    its canonical sequence.
    """
    from .pipeline import analyze_morphism
    from .interval import canonical_prefix
    from .words import Morphism, WordStream, power

    if n < 1:
        raise ValidationError("n must be >= 1")
    if params is None:
        params = SturmianParams(GOLDEN_SMALL, GOLDEN_SMALL)
    rot = permutation_from_values(rotation_sequence(params, n))
    m = power(Morphism.from_strings(["01", "0"], name="fibonacci"), 2)
    stream = WordStream(m, 0)
    by_shift = valid_permutation_prefix(stream, n, depth)
    analysis = analyze_morphism(m, seed=0)
    by_value = permutation_from_values(canonical_prefix(analysis.interval_morphism, n).values)
    s = _first_mismatch(rot, by_shift)
    c = _first_mismatch(rot, by_value)
    return CrossCheck(n, s is None and c is None, s, c)
