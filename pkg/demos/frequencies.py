"""
Uniform frequencies, value estimates and extremal shifts
========================================================

"""

from fractions import Fraction

from permulex import (FIBONACCI, THUE_MORSE, WordStream, canonical_value_bracket, ergodic_word_verdict,
                      factor_frequency_envelope, maxmin_scan, power, synthetic_block_word)

u = WordStream(THUE_MORSE)

# frequency of 00 over every window of length 4096 in the first 65536 letters
env = factor_frequency_envelope(u, "00", 2 ** 12, 2 ** 16)
print("00:", env.min_freq, "..", env.max_freq, "contains 1/6:", env.contains(Fraction(1, 6)))

# all short factors have narrow envelopes
print(ergodic_word_verdict(u, 4, 2 ** 12, 2 ** 16, tol=0.05).status.value)

# a word made of ever longer blocks has no uniform frequencies
blocks = synthetic_block_word(14)
v = ergodic_word_verdict(blocks, 2, 256, len(blocks) - 1, tol=0.05)
print(v.status.value, repr(v.witness), v.envelope.min_freq, "..", v.envelope.max_freq)

# the canonical value at position k is squeezed between factor frequencies
f2 = WordStream(power(FIBONACCI, 2))
for n in (4, 14, 40, 60):
    lo, hi = canonical_value_bracket(f2, 0, n, 2 ** 16)
    print(f"n={n:2d}  [{float(lo):.4f}, {float(hi):.4f}]")
print("limit (3-sqrt5)/2 = 0.381966...")

# the largest shift starting with 1 is found once and for all,
# the smallest one starting with 0 keeps moving as the prefix grows
for k in (10, 12, 14, 16):
    r = maxmin_scan(u, "1", "0", 2 ** k)
    print(2 ** k, r.max_candidate_for_w, r.max_stable, r.min_candidate_for_v, r.min_stable)
