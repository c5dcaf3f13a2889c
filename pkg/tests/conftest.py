import os
from fractions import Fraction

import pytest
from hypothesis import settings

from permulex import Morphism, WordStream, power
from permulex.scalars import Quadratic

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")

SQRT5 = Quadratic.sqrt(5)
HALF = Fraction(1, 2)


def plain_fixed_point(images, n, seed="0"):
    """String-based fixed point, independent of the numpy code path."""
    w = seed
    while len(w) < n:
        w = "".join(images[int(c)] for c in w)
    return w[:n]


def plain_ranks(word, n, depth):
    order = sorted(range(n), key=lambda i: word[i:i + depth])
    r = [0] * n
    for k, i in enumerate(order, 1):
        r[i] = k
    return tuple(r)


@pytest.fixture(scope="session")
def tm():
    return Morphism.from_strings(["01", "10"], name="thue-morse")


@pytest.fixture(scope="session")
def fib():
    return Morphism.from_strings(["01", "0"], name="fibonacci")


@pytest.fixture(scope="session")
def fib2(fib):
    return power(fib, 2)


@pytest.fixture(scope="session")
def g():
    return Morphism.from_strings(["02", "01", "21"], name="g")


@pytest.fixture(scope="session")
def insep():
    return Morphism.from_strings(["001", "011"], name="inseparable")


@pytest.fixture(scope="session")
def tm_stream(tm):
    return WordStream(tm, 0)


@pytest.fixture(scope="session")
def fib2_stream(fib2):
    return WordStream(fib2, 0)


@pytest.fixture(scope="session")
def insep_stream(insep):
    return WordStream(insep, 0)


@pytest.fixture(scope="session")
def tm_analysis(tm):
    from permulex import analyze_morphism
    return analyze_morphism(tm)


@pytest.fixture(scope="session")
def fib2_analysis(fib2):
    from permulex import analyze_morphism
    return analyze_morphism(fib2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
