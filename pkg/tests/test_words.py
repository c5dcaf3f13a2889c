import numpy as np
import pytest
from hypothesis import given, strategies as st

from permulex import Morphism, WordStream, compare_shifts, fixed_point_prefix, power, sort_shifts
from permulex.errors import ComparisonExhausted, NonExtensible, PeriodicWord, ValidationError
from permulex.words import compare_shifts_escalating, looks_periodic, word_str

from conftest import plain_fixed_point, plain_ranks


def test_thue_morse_prefix(tm_stream):
    assert word_str(fixed_point_prefix(tm_stream, 8)) == "01101001"


def test_fibonacci_prefix(fib):
    assert word_str(fixed_point_prefix(WordStream(fib), 8)) == "01001010"


def test_prefix_matches_string_oracle(tm_stream, fib2_stream):
    assert word_str(tm_stream.prefix(5000)) == plain_fixed_point(["01", "10"], 5000)
    assert word_str(fib2_stream.prefix(5000)) == plain_fixed_point(["010", "01"], 5000)


def test_non_extensible_seeds():
    with pytest.raises(NonExtensible):
        WordStream(Morphism.from_strings(["0", "10"]), 0)
    with pytest.raises(NonExtensible):
        WordStream(Morphism.from_strings(["10", "01"]), 0)


def test_morphism_validation():
    with pytest.raises(ValidationError):
        Morphism.from_strings(["01", ""])
    with pytest.raises(ValidationError):
        Morphism.from_strings(["01", "20"])
    with pytest.raises(ValidationError):
        Morphism(2, (("0", "1"),))


def test_power_examples(fib, tm):
    assert power(fib, 2).images == ((0, 1, 0), (0, 1))
    assert power(tm, 2).images == ((0, 1, 1, 0), (1, 0, 0, 1))
    assert power(tm, 1).images == tm.images
    with pytest.raises(ValidationError):
        power(tm, 0)


def test_compare_shifts_examples(tm_stream, insep_stream):
    assert compare_shifts(tm_stream, 0, 1, 4).less
    assert compare_shifts(insep_stream, 2, 5, 16).less
    with pytest.raises(ValidationError):
        compare_shifts(tm_stream, 3, 3, 8)


def test_unresolved_is_a_value(tm_stream):
    # T^0 u and T^8 u share their first letters; depth 1 cannot separate them
    r = compare_shifts(tm_stream, 0, 6, 1)
    assert not r.resolved and r.agreement == 1


def test_periodic_word_rejected():
    s = WordStream(Morphism.from_strings(["01", "01"]), 0)
    with pytest.raises(PeriodicWord):
        s.check_aperiodic()
    with pytest.raises(ComparisonExhausted):
        compare_shifts_escalating(s, 0, 2, 8, cap=64)
    assert looks_periodic(s.prefix(600), 256, 8)


@given(st.integers(1, 3000), st.integers(1, 3000))
def test_prefix_stability(n, m):
    s = WordStream(Morphism.from_strings(["01", "10"]), 0)
    a = s.prefix(min(n, m)).copy()
    b = WordStream(Morphism.from_strings(["01", "10"]), 0).prefix(max(n, m))
    assert np.array_equal(a, b[: len(a)])


@given(st.integers(1, 500))
def test_self_similarity(n):
    m = Morphism.from_strings(["010", "01"])
    s = WordStream(m, 0)
    img = m(s.prefix(n))
    assert np.array_equal(img, s.prefix(len(img)))


@given(st.integers(0, 2000), st.integers(0, 2000))
def test_antisymmetry(i, j):
    if i == j:
        return
    s = WordStream(Morphism.from_strings(["01", "10"]), 0)
    a, b = compare_shifts(s, i, j, 4096), compare_shifts(s, j, i, 4096)
    assert a.sign == -b.sign and a.agreement == b.agreement


@given(st.lists(st.integers(0, 900), min_size=3, max_size=3, unique=True))
def test_transitivity(triple):
    s = WordStream(Morphism.from_strings(["010", "01"]), 0)
    i, j, k = sorted(triple, key=lambda x: s.prefix(x + 4096)[x:].tobytes())
    assert compare_shifts(s, i, j, 4096).less and compare_shifts(s, j, k, 4096).less
    assert compare_shifts(s, i, k, 4096).less


def test_sort_shifts_matches_string_sort(fib2_stream):
    word = plain_fixed_point(["010", "01"], 12000)
    order = sort_shifts(fib2_stream, range(1000), 4096)
    expected = sorted(range(1000), key=lambda i: word[i:i + 4096])
    assert order == expected
    assert plain_ranks(word, 5, 64) == (2, 4, 1, 3, 5)
