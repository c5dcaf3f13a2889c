"""
Morphisms the construction refuses, with witnesses
==================================================

"""

from permulex import Morphism, WordStream, monotone_power, position_types, type_order
from permulex.errors import NotSeparable
from permulex import analyze_morphism, compare_shifts

# g never becomes monotone: already g(0) = 02 > 01 = g(1)
g = Morphism.from_strings(["02", "01", "21"], name="g")
search = monotone_power(g, max_k=5)
print("monotone power of g:", search.power)
for k, v in search.verdicts.items():
    print(" k =", k, v.status.value, v.witness)

# 0 -> 001, 1 -> 011 is monotone but the relation between two shifts is not
# determined by their position types
m = Morphism.from_strings(["001", "011"])
u = WordStream(m)
table = type_order(u)
print(table.verdict.value, "witness", table.witness)

n, k, n2 = table.witness
types = position_types(u, max(table.witness) + 1)
print(f"types: tau({n}) = {types[n]}, tau({k}) = {types[k]}, tau({n2}) = {types[n2]}")
print("T^n < T^k:", compare_shifts(u, n, k, 64).less, " T^k < T^n2:", compare_shifts(u, k, n2, 64).less)

try:
    analyze_morphism(m)
except NotSeparable as exc:
    print("rejected:", exc.reason, exc.witness)
