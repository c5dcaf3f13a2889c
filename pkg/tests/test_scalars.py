from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from permulex.errors import ParseError, UnresolvableComparison
from permulex.scalars import (Ball, Quadratic, compare, decimal_string, format_scalar, frac_part,
                              parse_scalar, squarefree_split)

SQRT5 = Quadratic.sqrt(5)
rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40)


def test_golden_ratio_identities():
    phi = (1 + SQRT5) / 2
    assert phi * phi == phi + 1
    assert (phi - 1) * phi == 1
    assert (3 - SQRT5) / 2 == 2 - phi


def test_squarefree_split():
    assert squarefree_split(20) == (2, 5)
    assert squarefree_split(7) == (1, 7)
    assert Quadratic.sqrt(20) == 2 * SQRT5
    assert Quadratic.sqrt(Fraction(9, 4)) == Fraction(3, 2)


def test_quadratic_equals_fraction_when_rational():
    q = Quadratic(Fraction(3, 4), 0, 5)
    assert q == Fraction(3, 4)
    assert hash(q) == hash(Fraction(3, 4))


def test_exact_sign_of_near_cancellation():
    # Lucas/Fibonacci pairs: L^2 - 5 F^2 = 4 (-1)^n, so F sqrt5 - L alternates in sign
    assert (987 * SQRT5 - 2207).sign() == -1
    assert compare(1346269 * SQRT5, 3010349) > 0
    assert compare(1346269 * SQRT5 - Fraction(1, 10 ** 6), 3010349) < 0


@given(rationals, rationals, rationals, rationals)
def test_quadratic_field_axioms(a, b, c, d):
    x, y = Quadratic(a, b, 5), Quadratic(c, d, 5)
    assert x + y - y == x
    assert (x * y) == (y * x)
    if y != 0:
        assert (x / y) * y == x
    assert compare(x, y) == -compare(y, x)


@given(rationals, rationals)
def test_quadratic_order_matches_floats(a, b):
    x = Quadratic(a, b, 5)
    f = float(a) + float(b) * 5 ** 0.5
    if abs(f) > 1e-9:
        assert x.sign() == (1 if f > 0 else -1)


@given(rationals, rationals)
def test_floor_and_frac_part(a, b):
    x = Quadratic(a, b, 5)
    fl = x.floor()
    assert compare(fl, x) <= 0 < compare(fl + 1, x)
    r = frac_part(x)
    assert compare(r, 0) >= 0 and compare(r, 1) < 0


def test_ball_arithmetic_contains_true_value():
    b = Ball.sqrt_of(2, 128)
    assert b.contains(Quadratic.sqrt(2))
    sq = b * b
    assert sq.contains(2)
    assert b.radius < 1e-35


def test_ball_overlap_is_unresolvable():
    b = Ball.sqrt_of(2, 64)
    with pytest.raises(UnresolvableComparison):
        compare(b, Quadratic.sqrt(2))
    assert compare(b, Fraction(141, 100)) > 0


@given(rationals, rationals)
def test_format_parse_round_trip_exact(a, b):
    x = Quadratic(a, b, 5)
    assert parse_scalar(format_scalar(x)) == x


@given(rationals)
def test_format_parse_round_trip_fraction(a):
    assert parse_scalar(format_scalar(a)) == a


def test_format_examples():
    assert format_scalar((3 - SQRT5) / 2) == "(3-sqrt(5))/2"
    assert format_scalar(SQRT5 - 2) == "sqrt(5)-2"
    assert format_scalar(Fraction(3, 4)) == "3/4"
    assert parse_scalar("1+1*sqrt(5)") == 1 + SQRT5


def test_ball_round_trip_contains_original():
    b = Ball.sqrt_of(3, 256)
    back = parse_scalar(format_scalar(b))
    assert isinstance(back, Ball)
    assert back.contains(Quadratic.sqrt(3))
    assert compare(back.lo, b.lo) <= 0 or back.radius >= b.radius


def test_decimal_string():
    assert decimal_string((3 - SQRT5) / 2) == "0.38196601125010515"
    assert decimal_string(Fraction(1, 3)) == "0.33333333333333333"


@pytest.mark.parametrize("bad", ["", "import os", "sqrt(sqrt(5))", "1/0", "x+1", "True"])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        parse_scalar(bad)
