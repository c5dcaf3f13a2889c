"""
Thue-Morse: from shifts to a canonical sequence
===============================================

"""

from fractions import Fraction

from permulex import (THUE_MORSE, WordStream, analyze_morphism, canonical_prefix, canonicality_report,
                      compare_shifts, permutation_from_values, valid_permutation_prefix)
from permulex.words import word_str

# the fixed point starting with 0
u = WordStream(THUE_MORSE, seed=0)
print("u =", word_str(u.prefix(32)), "...")

# shifts are compared letter by letter; this one is settled at offset 0
print("T^0 u < T^1 u:", compare_shifts(u, 0, 1, max_depth=4).less)

# sorting the first shifts gives a finite piece of the permutation
print("shift ranks of the first 8 positions:", valid_permutation_prefix(u, 8))

# the construction: frequencies, type order, intervals and affine maps
a = analyze_morphism(THUE_MORSE)
lay = a.interval_morphism.layout
for t, iv in lay.type_intervals:
    print(f"J{t} = {iv}")
print("orientation", lay.orientation.value, "start", a.interval_morphism.start)

# the canonical sequence has the same ranks as the shifts
seq = canonical_prefix(a.interval_morphism, 16)
print([str(x) for x in seq.values])
print("same pattern:", permutation_from_values(seq.values) == valid_permutation_prefix(u, 16))

# every dyadic interval gets its fair share of values
seq = canonical_prefix(a.interval_morphism, 2 ** 14)
rep = canonicality_report(seq, 2 ** 14, [(Fraction(d, 8), Fraction(d + 1, 8)) for d in range(8)])
print("worst deviation over eighths:", max(r.deviation for r in rep))
