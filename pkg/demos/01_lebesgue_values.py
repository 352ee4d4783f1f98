"""Evaluating Lebesgue's singular function L_a exactly and with enclosures.

L_a(x) is the probability that a biased-coin binary number t is at most x.
For rational x the value is itself rational and is computed exactly.
"""
# %%
from fractions import Fraction

from singular_lab import eval_derham, eval_periodic_exact, eval_ulam, from_fraction, invert

a = Fraction(3, 10)

# %% Dyadic points: both exact routes agree.
for x in (Fraction(1, 2), Fraction(5, 8), Fraction(3, 4)):
    print(f"L_{a}({x}) = {eval_derham(a, x)}")

# %% Eventually periodic points: the cycle of the doubling map closes a linear equation.
third = from_fraction(Fraction(1, 3))
exact = eval_periodic_exact(a, third)
print(f"L_{a}(1/3) = {exact}  (a^2 / (1 - a + a^2) = {a * a / (1 - a + a * a)})")

# %% The digit series gives a certified enclosure at any width.
box = eval_ulam(a, third, 40)
print(f"series enclosure at 2^-40: [{float(box.lo):.15f}, {float(box.hi):.15f}]")

# %% Peeling digits inverts L_a.
inv = invert(a, Fraction(1, 2), 30)
print(f"L_a^-1(1/2) lies in [{float(inv.lo):.12f}, {float(inv.hi):.12f}]")
print("exact preimage of 9/79:", invert(a, exact, 20).digits[:12], "...")
