"""Canonical representatives of permutations generated by morphic words.

A fixed point ``u`` of a primitive, monotone, separable morphism orders the
naturals by comparing its shifts. ``permulex`` builds the interval morphism
whose fixed point is the canonical real-valued representative of that order,
with exact arithmetic in Q and Q(sqrt d) and certified balls beyond.
"""

__version__ = "0.1.0"

from .errors import (AnalysisRejection, ComparisonExhausted, DuplicateValue, EndpointHit, FactorAbsent,
                     NonExtensible, NotMonotone, NotPrimitive, NotSeparable, ParseError, PeriodicWord,
                     PermulexError, TypeMissing, UnresolvableComparison, ValidationError)
from .scalars import Ball, Quadratic, compare, decimal_string, format_scalar, parse_scalar
from .words import (Morphism, WordStream, compare_shifts, compare_shifts_escalating, fixed_point_prefix,
                    power, sort_shifts)
from .spectral import SpectralData, incidence_matrix, is_primitive, perron_data, spectral_of
from .order import (Direction, Monotonicity, PositionType, Separability, TypeTable, extremal_image_word,
                    monotone_power, monotonicity_verdict, position_types, type_order,
                    verify_inseparable_witness, verify_monotonicity_witness)
from .permutation import FinitePermutation, permutation_complexity, permutation_from_values, valid_permutation_prefix
from .interval import (IntervalLayout, IntervalMorphism, Orientation, build_interval_morphism, build_layout,
                       canonical_prefix, canonicality_report, verify_against_shifts)
from .ergodicity import (Ergodicity, canonical_value_bracket, canonical_value_estimate, ergodic_word_verdict,
                         factor_frequency_envelope, maxmin_scan, synthetic_block_word)
from .sturmian import SturmianParams, doubling_step, rotation_sequence, sturmian_cross_check
from .pipeline import Analysis, analyze_morphism, with_precision
from .specio import MorphismSpec, analysis_report, bundled_spec, parse_spec

FIBONACCI = Morphism.from_strings(["01", "0"], name="fibonacci")
THUE_MORSE = Morphism.from_strings(["01", "10"], name="thue-morse")
