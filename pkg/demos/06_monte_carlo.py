"""L_a as a distribution function: simulate the biased coin and compare."""
# %%
from fractions import Fraction

from singular_lab.sim import empirical_cdf

grid = [Fraction(j, 64) for j in range(65)]
report = empirical_cdf(Fraction(3, 10), 10 ** 6, 40, grid, seed=1)

# %%
for x, f, exact, diff in list(report.rows())[::8]:
    print(f"x={str(x):6s} empirical={f:.5f} exact={float(exact):.5f} |diff|={diff:.5f}")
print(f"sup discrepancy {report.sup_discrepancy:.5f}, DKW radius {report.dkw_radius:.5f},"
      f" passed={report.passed}")
