from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from permulex import (SturmianParams, canonicality_report, doubling_step, permutation_complexity,
                      permutation_from_values, rotation_sequence, sturmian_cross_check)
from permulex.errors import ValidationError
from permulex.scalars import Ball, Quadratic, compare
from permulex.sturmian import GOLDEN_SMALL, distinct_gaps, doubling_sequence

SQRT2 = Quadratic.sqrt(2)
SQRT5 = Quadratic.sqrt(5)


def test_rotation_examples():
    p = SturmianParams(SQRT2 - 1, 0)
    assert rotation_sequence(p, 3) == [0, SQRT2 - 1, 2 * SQRT2 - 2]
    q = SturmianParams(GOLDEN_SMALL, GOLDEN_SMALL)
    assert rotation_sequence(q, 3) == [(3 - SQRT5) / 2, 3 - SQRT5, (9 - 3 * SQRT5) / 2 - 1]
    assert rotation_sequence(q, 1) == [q.rho]
    assert rotation_sequence(q, 0) == []


def test_rotation_matches_floor_formula():
    p = SturmianParams(GOLDEN_SMALL, Fraction(1, 3))
    seq = rotation_sequence(p, 300)
    for k, x in enumerate(seq):
        y = p.rho + k * p.sigma
        assert x == y - y.floor()


def test_rational_sigma_rejected():
    with pytest.raises(ValidationError):
        SturmianParams(Fraction(2, 5), 0)
    with pytest.raises(ValidationError):
        SturmianParams(SQRT2, 0)
    with pytest.raises(ValidationError):
        SturmianParams(SQRT2 - 1, 1)


def test_doubling_step_exact():
    p = SturmianParams(GOLDEN_SMALL, GOLDEN_SMALL)
    beta = rotation_sequence(p, 202)
    for n in range(101):
        assert doubling_step(beta[n], p) == (beta[2 * n], beta[2 * n + 1])
    assert doubling_step(p.rho, p) == (beta[0], beta[1])


def test_doubling_fixed_point_regenerates_rotation():
    p = SturmianParams((SQRT5 - 1) / 2, Fraction(1, 3))
    assert doubling_sequence(p, 1000) == rotation_sequence(p, 1000)


@given(st.integers(2, 400), st.fractions(min_value=0, max_value=Fraction(99, 100), max_denominator=100))
def test_three_distance(n, rho):
    p = SturmianParams(SQRT2 - 1, rho)
    assert len(distinct_gaps(rotation_sequence(p, n))) <= 3


def test_three_distance_ball():
    p = SturmianParams(Ball.sqrt_of(3, 256) - 1, 0)
    assert len(distinct_gaps(rotation_sequence(p, 200))) <= 3


def test_equidistribution():
    p = SturmianParams((SQRT5 - 1) / 2, Fraction(1, 3))
    seq = rotation_sequence(p, 2 ** 16)
    ivs = [(Fraction(d, 10), Fraction(d + 1, 10)) for d in range(10)]
    rep = canonicality_report(seq, 2 ** 16, ivs, closed="left")
    assert max(r.deviation for r in rep) < 0.01


def test_cross_check():
    assert sturmian_cross_check(100).agree
    assert sturmian_cross_check(1).agree


def test_cross_check_reports_mismatch():
    r = sturmian_cross_check(200, SturmianParams((SQRT5 - 1) / 2, Fraction(1, 3)))
    assert not r.agree and r.shift_mismatch is not None


def test_sturmian_complexity():
    p = SturmianParams((SQRT5 - 1) / 2, Fraction(1, 3))
    perm = permutation_from_values(rotation_sequence(p, 10 ** 4 + 7))
    assert permutation_complexity(perm, 5, 10 ** 4) == 5
