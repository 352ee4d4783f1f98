"""Takagi's function, its normalized difference quotients, and T composed with L_a^-1."""
# %%
from fractions import Fraction

from singular_lab import (canonicalize, classify_composition, from_fraction, normalized_quotient,
                          takagi_exact)
from singular_lab.analysis import composition_slope_series

print("T(1/3) =", takagi_exact(Fraction(1, 3)), " T(1/7) =", takagi_exact(Fraction(1, 7)))

# %% The normalized quotient tends to D0 - D1.
for y, d in ((Fraction(1, 3), "0"), (Fraction(1, 7), "1/3")):
    vals = [float(normalized_quotient(from_fraction(y), Fraction(1, 4 ** t)).value.mid)
            for t in (8, 16, 32)]
    print(f"y={y}: {[round(v, 4) for v in vals]}  (limit {d})")

# %% Where L_a^-1 is very steep the composition becomes flat.
a = Fraction(9, 10)
y = canonicalize(((), (0,) * 9 + (1,)))
for e in composition_slope_series(a, y, [10, 20, 30, 40]):
    print(f"depth {e.depth}: quotient ~ {float(e.quotient.mid):.3g}"
          f" = {float(e.factor1.mid):.3f} x {float(e.factor2.mid):.3g}")
print("verdict:", classify_composition(a, y))
