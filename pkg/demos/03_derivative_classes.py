"""Which points have L_a' = 0, which +infinity, and what the slopes look like."""
# %%
import math
from fractions import Fraction

from singular_lab import canonicalize, classify_derivative, from_fraction, make_boundary_expansion
from singular_lab.analysis import slope_series

points = {
    "3/8 (dyadic)": from_fraction(Fraction(3, 8)),
    "1/3 (D1 = 1/2)": from_fraction(Fraction(1, 3)),
    "1/1023 (D1 = 1/10)": canonicalize(((), (0,) * 9 + (1,))),
}

# %% Verdicts depend only on digit statistics.
for a in (Fraction(3, 10), Fraction(9, 10)):
    for name, x in points.items():
        print(f"a={a}  x={name:20s} -> {classify_derivative(a, x)}")

# %% Slopes along the zero positions decay or blow up as the verdict predicts.
for a, name in ((Fraction(3, 10), "1/3 (D1 = 1/2)"), (Fraction(9, 10), "1/1023 (D1 = 1/10)")):
    s = slope_series(a, points[name], count=40)
    tail = ", ".join(f"{float(q.mid):.3g}" for q in s.quotients[::10])
    print(f"a={a} x={name}: slopes at p_1, p_11, p_21, p_31 = {tail}")

# %% On the critical line the sign of f(k) decides.
a = Fraction(3, 10)
for sign in (1, -1):
    x = make_boundary_expansion(a, lambda k, s=sign: s * math.isqrt(k), 500)
    print(f"boundary point with f ~ {'+' if sign > 0 else '-'}sqrt(k):", classify_derivative(a, x))
