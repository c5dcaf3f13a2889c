import pytest

from permulex import Morphism, analyze_morphism, canonical_prefix, verify_against_shifts, with_precision
from permulex.errors import NotMonotone, NotPrimitive, NotSeparable, PeriodicWord, UnresolvableComparison, ValidationError
from permulex.pipeline import default_precision
from permulex.scalars import Ball
from permulex.words import WordStream, power

TRIB = Morphism.from_strings(["01", "02", "0"], name="tribonacci")


def test_rejections(fib, g, insep):
    with pytest.raises(NotMonotone) as e:
        analyze_morphism(fib)
    assert e.value.reason == "not-monotone" and e.value.witness == ("0", "10")
    with pytest.raises(NotMonotone):
        analyze_morphism(g, auto_power=True)
    with pytest.raises(NotSeparable) as e:
        analyze_morphism(insep)
    assert e.value.witness == (2, 17, 5)
    with pytest.raises(NotPrimitive):
        analyze_morphism(Morphism.from_strings(["01", "12", "2"]))
    with pytest.raises(PeriodicWord):
        analyze_morphism(Morphism.from_strings(["01", "01"]))


def test_auto_power(fib):
    a = analyze_morphism(fib, auto_power=True)
    assert a.power == 2 and a.morphism.images == ((0, 1, 0), (0, 1))
    assert a.power_search.power == 2


def test_ball_mode_end_to_end():
    a = analyze_morphism(TRIB, auto_power=True)
    assert a.power == 3 and not a.spectral.exact
    assert isinstance(a.interval_morphism.start, Ball)
    r = verify_against_shifts(a.interval_morphism, WordStream(a.morphism, 0), 1000)
    assert r.agree


def test_precision_escalation():
    seen = []

    def run(bits):
        seen.append(bits)
        if bits < 1024:
            raise UnresolvableComparison("too coarse")
        return bits

    assert with_precision(run, 256) == 1024 and seen == [256, 512, 1024]
    with pytest.raises(UnresolvableComparison):
        with_precision(lambda b: (_ for _ in ()).throw(UnresolvableComparison("never")), 256, cap=512)


def test_low_precision_generation_escalates():
    def run(bits):
        a = analyze_morphism(power(TRIB, 3), precision=bits)
        return canonical_prefix(a.interval_morphism, 2000).values

    vals = with_precision(run, 53)
    assert len(vals) == 2000


def test_precision_env(monkeypatch):
    monkeypatch.setenv("PERMULEX_PRECISION_BITS", "512")
    assert default_precision() == 512
    monkeypatch.setenv("PERMULEX_PRECISION_BITS", "banana")
    with pytest.raises(ValidationError):
        default_precision()
    monkeypatch.delenv("PERMULEX_PRECISION_BITS")
    assert default_precision() == 256
