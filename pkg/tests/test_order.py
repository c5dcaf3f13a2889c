import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from permulex import (Direction, Monotonicity, Morphism, PositionType, Separability, WordStream,
                      compare_shifts, extremal_image_word, monotone_power, monotonicity_verdict, position_types,
                      type_order, verify_inseparable_witness, verify_monotonicity_witness)
from permulex.errors import TypeMissing, ValidationError
from permulex.order import all_types
from permulex.words import word_str

P = PositionType


def brute_extremal(images, n, pick):
    q = len(images)
    words = ("".join(images[int(c)] for c in w)[:n] for w in product("".join(map(str, range(q))), repeat=n))
    return pick(words)


@pytest.mark.parametrize("images", [["01", "10"], ["010", "01"], ["01", "0"], ["02", "01", "21"]])
def test_extremal_matches_brute_force(images):
    m = Morphism.from_strings(images)
    for d, pick in ((Direction.MIN, min), (Direction.MAX, max)):
        w = extremal_image_word(m, d, 8)
        assert word_str(w.prefix) == brute_extremal(images, 8, pick)


def test_extremal_thue_morse(tm):
    lo = extremal_image_word(tm, "min", 8)
    hi = extremal_image_word(tm, "max", 8)
    assert word_str(lo.prefix) == "01010101" and lo.certified
    assert word_str(hi.prefix) == "10101010" and hi.certified
    assert word_str(lo.take(20)) == "01" * 10


def test_extremal_unary():
    m = Morphism.from_strings(["00"])
    assert word_str(extremal_image_word(m, "min", 12).prefix) == "0" * 12


@pytest.mark.parametrize("images", [["01", "10"], ["010", "01"], ["01", "0"], ["001", "011"]])
def test_extremal_preimage_is_consistent(images):
    m = Morphism.from_strings(images)
    for d in Direction:
        w = extremal_image_word(m, d, 64)
        for i in range(40):
            x = w.preimage(i)
            assert word_str(m(x))[: i + 1] == word_str(w.prefix[: i + 1])


def test_monotonicity_examples(tm, fib, g):
    assert monotonicity_verdict(tm).status is Monotonicity.MONOTONE
    v = monotonicity_verdict(fib)
    assert v.status is Monotonicity.NOT_MONOTONE
    assert v.witness == ("0", "10")
    assert verify_monotonicity_witness(fib, *v.witness)
    vg = monotonicity_verdict(g)
    assert vg.status is Monotonicity.NOT_MONOTONE
    assert verify_monotonicity_witness(g, *vg.witness)


def test_g_powers_stay_nonmonotone(g):
    s = monotone_power(g, 5)
    assert s.power is None
    assert all(v.status is Monotonicity.NOT_MONOTONE for v in s.verdicts.values())
    # the stated fact behind it: g^n(0) > g^n(1)
    from permulex import power
    for n in range(1, 6):
        gn = power(g, n)
        assert gn.images[0] > gn.images[1]


def test_monotone_power(tm, fib):
    assert monotone_power(fib).power == 2
    assert monotone_power(tm).power == 1
    with pytest.raises(ValidationError):
        monotone_power(tm, 0)


def test_monotone_on_fixed_point(fib2_stream):
    rng = random.Random(7)
    m = fib2_stream.morphism
    u = fib2_stream.prefix(200000)
    lens = np.concatenate(([0], np.cumsum(np.array(m.lengths)[u[:60000]])))
    # T^i u < T^j u  implies phi(T^i u) = T^{|phi(u[:i])|} u < phi(T^j u)
    for _ in range(3000):
        i, j = rng.sample(range(20000), 2)
        if compare_shifts(fib2_stream, i, j, 4096).less:
            assert compare_shifts(fib2_stream, int(lens[i]), int(lens[j]), 8192).less


def test_position_types_examples(tm_stream, insep_stream):
    t = position_types(tm_stream, 4)
    assert t[0] == P(0, 1) and t[1] == P(0, 2)
    assert position_types(insep_stream, 18)[17] == P(1, 3)


@given(st.integers(1, 3000))
def test_position_types_partition(n):
    s = WordStream(Morphism.from_strings(["001", "011"]), 0)
    u = s.prefix(n)
    types = position_types(s, n)
    m = s.morphism
    for k, t in enumerate(types):
        assert 1 <= t.index <= len(m.images[t.letter])
        assert m.images[t.letter][t.index - 1] == u[k]


def test_type_order_examples(tm_stream, fib2_stream, insep_stream):
    t = type_order(tm_stream)
    assert t.verdict is Separability.SEPARABLE
    assert t.order == (P(1, 2), P(0, 1), P(1, 1), P(0, 2))
    f = type_order(fib2_stream)
    assert f.order == (P(0, 3), P(0, 1), P(1, 1), P(0, 2), P(1, 2))
    i = type_order(insep_stream)
    assert i.verdict is Separability.INSEPARABLE
    assert i.witness == (2, 17, 5)
    assert verify_inseparable_witness(insep_stream, i.witness)
    types = position_types(insep_stream, 18)
    assert types[2] == types[5] == P(0, 3) and types[17] == P(1, 3)


def test_order_embedding(fib2_stream):
    table = type_order(fib2_stream)
    rng = random.Random(3)
    types = position_types(fib2_stream, 20000)
    for _ in range(2000):
        n, m = rng.sample(range(20000), 2)
        if types[n] == types[m]:
            continue
        expect = table.rank(types[n]) < table.rank(types[m])
        assert compare_shifts(fib2_stream, n, m, 4096).less == expect


def test_type_missing(tm_stream):
    with pytest.raises(TypeMissing):
        type_order(tm_stream, prefix_len=1)


def test_all_types_count(fib2):
    assert len(all_types(fib2)) == sum(fib2.lengths)
