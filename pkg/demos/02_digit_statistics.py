"""Binary digit statistics: densities, zero positions and the boundary construction."""
# %%
import math
from fractions import Fraction

from singular_lab import (DigitStats, f_sequence, from_fraction, g_sequence, l0,
                          make_boundary_expansion)

# %% Densities of eventually periodic points are read off the period.
for x in (Fraction(1, 3), Fraction(1, 7), Fraction(1, 1023)):
    s = DigitStats(from_fraction(x))
    print(f"{x}: D1 = {s.d1}, first zero positions {[s.zero_pos(k) for k in range(1, 6)]}")

# %% The critical density separating the two derivative regimes.
a = Fraction(3, 10)
print(f"l0(3/10) ~ {float(l0(a).mid):.9f}")

# %% A point sitting exactly on the critical density, with f(k) ~ +sqrt(k).
x = make_boundary_expansion(a, math.isqrt, 2000)
f = f_sequence(x, 2000)
g = g_sequence(x, 2000)
for k in (10, 100, 1000, 2000):
    print(f"k={k:5d}  f(k) ~ {float(f[k - 1].mid):7.2f}  sqrt(k) = {math.sqrt(k):6.2f}"
          f"  g(k) ~ {float(g[k - 1].mid):6.2f}")
