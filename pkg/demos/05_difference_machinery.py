"""The difference-operator engine behind the identifiability proofs.

Run with:  python3 demos/05_difference_machinery.py
"""

import numpy as np

from groupident import (Distribution, Endo, Group, ProductEquation,
                        bernstein_check, diff, eliminate, extract_character,
                        is_character, is_polynomial)
from groupident import bernstein_square_table, consistent_shifts
from groupident.funceq import FunctionTable

g = Group([7])

# Finite differences of a character are proportional to the character.
x = g.element([3])
f = FunctionTable(g, g.elements(), g.pairing_matrix[g.index(x)])
d = diff(f, g.element([1]))
print("difference of a character, max |residual|:",
      max(abs(d[y] - f[y] * (f[g.element([1])] - 1)) for y in d.points))

# On a finite group only constants are polynomial in the difference sense.
print("character is polynomial of some degree:",
      any(is_polynomial(f, n) for n in range(8)))

# Product equation from genuinely shifted distributions, and its cascade.
bs = [Endo.scalar(g, c) for c in (1, 2, 3)]
mus = [Distribution.random(g, [1, j], 0.2) for j in range(3)]
shifts = consistent_shifts(bs, "I", g.element([2]))
nus = [m.shift(s) for m, s in zip(mus, shifts)]
ratios = [FunctionTable(g, g.elements(), nu.char_array / mu.char_array)
          for mu, nu in zip(mus, nus)]
eq = ProductEquation(tuple((r, b.adjoint()) for r, b in zip(ratios, bs)))
print("\nproduct equation defect:", eq.residual_defect())

once = eliminate(eq, 0, g.element([1]))
print("after one elimination:", once.arity, "factors, defect",
      once.residual_defect())

for verdict in extract_character(eq):
    print(f"factor {verdict.index}: character={verdict.is_char}, "
          f"located={verdict.located}, cascade defect={verdict.cascade_defect:.2e}")
print("constructed shifts:", shifts)

# The square-phase table solves the Bernstein equation without being a
# character; this needs a group with several involutions.
g66 = Group([6, 6])
t = bernstein_square_table(g66)
print("\nsquare-phase table on Z6xZ6:")
print("  bernstein equation:", bernstein_check(t))
print("  is a character:    ", is_character(t))
print("  involutions:       ", g66.order_two_count())
