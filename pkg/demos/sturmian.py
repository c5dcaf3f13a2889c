"""
Rotations by an irrational angle
================================

"""

from fractions import Fraction

from permulex import (SturmianParams, doubling_step, permutation_complexity, permutation_from_values,
                      rotation_sequence, sturmian_cross_check)
from permulex.scalars import Quadratic, format_scalar
from permulex.sturmian import distinct_gaps

sqrt5 = Quadratic.sqrt(5)
p = SturmianParams(sigma=(3 - sqrt5) / 2, rho=(3 - sqrt5) / 2)

beta = rotation_sequence(p, 8)
print([format_scalar(x) for x in beta])

# the doubling map sends beta_n to the pair (beta_2n, beta_2n+1)
beta = rotation_sequence(p, 64)
print(all(doubling_step(beta[n], p) == (beta[2 * n], beta[2 * n + 1]) for n in range(32)))

# at most three gap lengths, whatever the number of points
print([format_scalar(g) for g in distinct_gaps(rotation_sequence(p, 1000))])

# with this choice of angle and offset the ranks are those of the Fibonacci word
print(sturmian_cross_check(1000))

# n distinct patterns of length n: the smallest possible number
q = SturmianParams((sqrt5 - 1) / 2, Fraction(1, 3))
perm = permutation_from_values(rotation_sequence(q, 10 ** 4 + 8))
print([permutation_complexity(perm, n, 10 ** 4) for n in range(1, 9)])
