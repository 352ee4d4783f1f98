"""The increment identity L_a(x + 2^-p_k) - L_a(x) = a^k (1-a)^(p_k-k) C1(x, k)."""
# %%
import math
from fractions import Fraction

from singular_lab import from_fraction, make_boundary_expansion
from singular_lab.analysis import boundary_growth, c1_bounds, c1_series, key_equation_residual

a = Fraction(3, 10)
x = from_fraction(Fraction(2, 7))

# %% Both sides are computed by independent exact routes; the residual vanishes.
print("residuals:", [str(key_equation_residual(a, x, k)) for k in range(1, 11)])

# %% C1 stays within its a priori bounds.
lo, hi = c1_bounds(a)
print(f"bounds [{lo}, {hi}]")
for rec in c1_series(a, x, 6):
    print(f"k={rec.k} p_k={rec.p_k} C1={rec.c1}")

# %% On a critical-line point the slope divided by (2(1-a))^f(k) is C1 again.
b = make_boundary_expansion(a, math.isqrt, 400)
for r in boundary_growth(a, b, 200)[::40]:
    print(f"k={r.k:4d}  ratio ~ {float(r.ratio.mid):.4f}  envelope [{float(r.envelope.lo):.2f},"
          f" {float(r.envelope.hi):.2f}]")
