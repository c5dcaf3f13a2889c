"""
Fibonacci word: taking a power, exact arithmetic in Q(sqrt 5)
============================================================

"""

from permulex import FIBONACCI, analyze_morphism, monotonicity_verdict, monotone_power, verify_against_shifts
from permulex.errors import NotMonotone
from permulex.scalars import decimal_string, format_scalar

# the Fibonacci morphism itself reverses the order of some words
v = monotonicity_verdict(FIBONACCI)
print(v.status.value, "witness", v.witness)

try:
    analyze_morphism(FIBONACCI)
except NotMonotone as exc:
    print("rejected:", exc.reason)

# its square does preserve order, and has the same fixed point
print("least monotone power:", monotone_power(FIBONACCI).power)
a = analyze_morphism(FIBONACCI, auto_power=True)
print("images", a.morphism.images)

# everything below is exact
sp = a.spectral
print("theta =", format_scalar(sp.theta))
print("mu    =", [format_scalar(x) for x in sp.mu])
for t, iv in a.interval_morphism.layout.type_intervals:
    print(f"J{t} = [{format_scalar(iv.lo)}, {format_scalar(iv.hi)}]  length {format_scalar(iv.length)}")

# the start sits strictly inside its interval, so no endpoint is ever reached
im = a.interval_morphism
print("start", format_scalar(im.start), "=", decimal_string(im.start), "orientation", im.layout.orientation.value)

# the real check: ranks of values agree with ranks of shifts
print(verify_against_shifts(im, a.stream, 1000))
