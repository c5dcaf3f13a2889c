"""
Cubic eigenvalues: certified balls instead of exact numbers
===========================================================

"""

from permulex import Morphism, analyze_morphism, canonical_prefix, verify_against_shifts, with_precision
from permulex.scalars import format_scalar

trib = Morphism.from_strings(["01", "02", "0"], name="tribonacci")

# the cube is the first monotone power
a = analyze_morphism(trib, auto_power=True)
print("power", a.power, "minimal polynomial", a.spectral.min_poly)
print("theta =", format_scalar(a.spectral.theta))
print("start =", format_scalar(a.interval_morphism.start), a.interval_morphism.layout.orientation.value)

# comparisons of balls either resolve or say so
print(verify_against_shifts(a.interval_morphism, a.stream, 1000))


# starting from 53 bits, precision doubles until every comparison resolves
def first_values(bits):
    print("  trying", bits, "bits")
    b = analyze_morphism(trib, k=3, precision=bits)
    return canonical_prefix(b.interval_morphism, 5000).values


vals = with_precision(first_values, 53)
print(len(vals), "values, last", format_scalar(vals[-1]))
