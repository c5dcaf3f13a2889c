"""End-to-end construction: morphism in, interval morphism out."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import NotMonotone, NotPrimitive, NotSeparable, UnresolvableComparison, ValidationError
from .interval import IntervalLayout, IntervalMorphism, build_interval_morphism, build_layout
from .order import (DEFAULT_DEPTH, DEFAULT_PAIRS, DEFAULT_PREFIX, Monotonicity, MonotonicityVerdict,
                    PowerSearch, Separability, TypeTable, monotone_power, monotonicity_verdict, type_order)
from .scalars import DEFAULT_PRECISION, MAX_PRECISION
from .spectral import Primitivity, SpectralData, incidence_matrix, is_primitive, perron_data
from .words import Morphism, WordStream, power

PRECISION_ENV = "PERMULEX_PRECISION_BITS"


def default_precision() -> int:
    """Ball precision in bits, from ``PERMULEX_PRECISION_BITS`` when set."""
    raw = os.environ.get(PRECISION_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_PRECISION
    try:
        bits = int(raw)
    except ValueError:
        raise ValidationError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None
    if not 53 <= bits <= MAX_PRECISION:
        raise ValidationError(f"{PRECISION_ENV} must be in 53..{MAX_PRECISION}")
    return bits


@dataclass
class Analysis:
    """Every intermediate result of the construction.

    ``morphism`` is the one actually analysed (after any power was applied);
    ``power`` is the exponent relative to ``base``.
    """

    base: Morphism
    power: int
    morphism: Morphism
    seed: int
    stream: WordStream
    primitivity: Primitivity
    spectral: SpectralData
    monotonicity: MonotonicityVerdict
    power_search: PowerSearch | None
    type_table: TypeTable
    layout: IntervalLayout
    interval_morphism: IntervalMorphism
    order_override: tuple | None = None


def analyze_morphism(morphism: Morphism, seed: int = 0, k: int = 1, auto_power: bool = False,
                     prefix: int = DEFAULT_PREFIX, depth: int = DEFAULT_DEPTH,
                     pairs_per_type: int = DEFAULT_PAIRS, precision: int | None = None,
                     max_power: int = 5, order: Sequence | None = None) -> Analysis:
    """Run primitivity, spectral, monotonicity, type order, layout and maps.

    Raises NotPrimitive, NotMonotone or NotSeparable when the morphism is
    outside the class the construction handles. With ``auto_power`` the least
    monotone power up to ``max_power`` of ``morphism**k`` is used. ``order``
    replaces the measured type order (separability is still measured).
    """
    precision = default_precision() if precision is None else precision
    base = morphism
    m = power(base, k)
    stream = WordStream(m, seed)
    stream.check_aperiodic()
    A = incidence_matrix(m)
    prim = is_primitive(A)
    if not prim:
        raise NotPrimitive(f"incidence matrix of {m} is not primitive")

    verdict = monotonicity_verdict(m, depth)
    search = None
    if verdict.status is not Monotonicity.MONOTONE and auto_power:
        search = monotone_power(m, max_power, depth)
        if search.power is not None:
            k *= search.power
            m = power(base, k)
            stream = WordStream(m, seed)
            A = incidence_matrix(m)
            verdict = search.verdicts[search.power]
    if verdict.status is not Monotonicity.MONOTONE:
        raise NotMonotone(f"{m} is {verdict.status.value}", verdict.witness)

    table = type_order(stream, prefix, depth, pairs_per_type)
    if table.verdict is not Separability.SEPARABLE and order is None:
        raise NotSeparable(f"type order is {table.verdict.value}", table.witness)
    spectral = perron_data(A, precision)
    layout = build_layout(spectral, table, m, order)
    im = build_interval_morphism(layout, m, seed, spectral.theta)
    return Analysis(base, k, m, seed, stream, prim, spectral, verdict, search, table, layout, im,
                    None if order is None else tuple(tuple(t) for t in order))


def with_precision(run: Callable[[int], object], precision: int | None = None,
                   cap: int = MAX_PRECISION):
    """Call ``run(bits)``, doubling ``bits`` while ball comparisons are unresolvable."""
    bits = default_precision() if precision is None else precision
    while True:
        try:
            return run(bits)
        except UnresolvableComparison:
            if bits >= cap:
                raise
            bits = min(2 * bits, cap)
