"""The fourteen acceptance checks, one test each.

Run with ``pytest tests/test_acceptance.py -s`` to see a PASS/FAIL line per
criterion as it finishes; the same table is repeated in the terminal summary.
"""

import csv
import io
import math
import random
from fractions import Fraction

from oracles import lebesgue_by_orbit, takagi_with_bound
from singular_lab.analysis import (boundary_growth, c1_series, composition_slope_series,
                                   key_equation_residual, slope_series)
from singular_lab.classify import classify_composition, classify_derivative
from singular_lab.cli import main
from singular_lab.digits import DigitStats, from_fraction, g_sequence
from singular_lab.interval import Interval
from singular_lab.lebesgue import (eval_derham, eval_dyadic_exact, increment_at_scale, invert)
from singular_lab.sim import empirical_cdf
from singular_lab.takagi import normalized_quotient

BIASES = [Fraction(1, 3), Fraction(3, 10), Fraction(7, 10), Fraction(9, 10)]
A = Fraction(3, 10)


def test_01_oracle_equivalence(criterion):
    with criterion(1, "de Rham recursion equals the digit series on j/2^N, N <= 10"):
        pairs = [(j, n) for n in range(11) for j in range(1, 2 ** n)]
        assert len(pairs) == 2036
        assert len({Fraction(j, 2 ** n) for j, n in pairs}) == 1023
        for a in BIASES:
            for j, n in pairs + [(0, 0), (1, 0)]:
                x = Fraction(j, 2 ** n)
                assert eval_derham(a, x) == eval_dyadic_exact(a, x)


def test_02_functional_equation(criterion):
    with criterion(2, "functional equation exact on 10,000 random dyadics per bias"):
        rng = random.Random(2)
        for a in BIASES:
            branches = set()
            for _ in range(10_000):
                n = rng.randint(1, 40)
                x = Fraction(rng.randint(0, 2 ** n), 2 ** n)
                lx = eval_dyadic_exact(a, x)
                if x <= Fraction(1, 2):
                    branches.add("left")
                    assert lx == a * eval_dyadic_exact(a, 2 * x)
                if x >= Fraction(1, 2):
                    branches.add("right")
                    assert lx == (1 - a) * eval_dyadic_exact(a, 2 * x - 1) + a
            assert branches == {"left", "right"}


def test_03_monotone_and_reflection(criterion):
    with criterion(3, "strictly increasing and reflection-symmetric on the 2^-12 grid"):
        grid = [Fraction(j, 2 ** 12) for j in range(2 ** 12 + 1)]
        for a in BIASES:
            values = [eval_dyadic_exact(a, x) for x in grid]
            assert all(u < v for u, v in zip(values, values[1:]))
            mirror = {x: eval_dyadic_exact(1 - a, x) for x in grid}
            for x in grid:
                assert eval_dyadic_exact(a, 1 - x) == 1 - mirror[x]


def test_04_inversion(criterion):
    with criterion(4, "inversion brackets 1,000 random rationals at depth 48"):
        rng = random.Random(4)
        for a in BIASES:
            for _ in range(1000):
                q = rng.randint(1, 10 ** 6)
                y = Fraction(rng.randint(0, q), q)
                inv = invert(a, y, 48)
                assert inv.hi - inv.lo == Fraction(1, 2 ** 48)
                assert eval_dyadic_exact(a, inv.lo) <= y <= eval_dyadic_exact(a, min(inv.hi, 1))


def test_05_dyadic_branch(criterion):
    with criterion(5, "x = 3/8: slope closed form for k <= 60 and NotDifferentiable verdict"):
        x = from_fraction(Fraction(3, 8))
        series = slope_series(A, x, scales=range(1, 61))
        for k, q in series.entries:
            exact = (eval_dyadic_exact(A, Fraction(3, 8) + Fraction(1, 2 ** k))
                     - eval_dyadic_exact(A, Fraction(3, 8))) * 2 ** k
            assert q == Interval.point(exact)
            assert increment_at_scale(A, x, k) * 2 ** k == exact
            if k > 3:
                # two ones among the first three digits
                assert exact == (2 * A) ** k * ((1 - A) / A) ** 2
        assert str(classify_derivative(A, x)) == "NotDifferentiable(right=Zero, left=PlusInfinity)"


def test_06_density_branch(criterion, sparse_ones):
    with criterion(6, "x = 1/3 slopes fall below 1e-3 by p_60; D1 = 1/10 slope exceeds 1e3 at p_40"):
        third = from_fraction(Fraction(1, 3))
        for a in (A, Fraction(9, 10)):
            assert str(classify_derivative(a, third)) == "Zero"
            s = slope_series(a, third, count=60)
            hi = [q.hi for q in s.quotients]
            # strictly decreasing from the second scale on
            assert all(u > v for u, v in zip(hi[1:], hi[2:]))
            assert hi[-1] < Fraction(1, 1000)
            p = s.scales[-1]
            assert s.quotients[-1].contains(
                (lebesgue_by_orbit(a, Fraction(1, 3) + Fraction(1, 2 ** p))
                 - lebesgue_by_orbit(a, Fraction(1, 3))) * 2 ** p)
        a = Fraction(9, 10)
        assert str(classify_derivative(a, sparse_ones)) == "PlusInfinity"
        s = slope_series(a, sparse_ones, count=40)
        assert s.quotients[-1].lo > 1000


def test_07_c1_bounds(criterion, sparse_ones):
    with criterion(7, "every C1 record lies inside [min(1,(1-a)/a), max(1,(1-a)/a)]"):
        fixtures = [from_fraction(Fraction(v)) for v in ("1/3", "1/7", "2/7", "5/11")]
        fixtures.append(sparse_ones)
        count = 0
        for a in BIASES:
            lo, hi = min(1, (1 - a) / a), max(1, (1 - a) / a)
            for x in fixtures:
                for rec in c1_series(a, x, 40):
                    assert rec.bounds == (lo, hi)
                    assert Interval(lo, hi).contains(rec.c1)
                    count += 1
        assert count == 4 * 5 * 40


def test_08_key_equation(criterion):
    with criterion(8, "key equation residual is exactly 0"):
        for a in (Fraction(1, 3), A):
            for x in (Fraction(1, 3), Fraction(1, 7), Fraction(2, 7)):
                for k in range(1, 11):
                    assert key_equation_residual(a, from_fraction(x), k) == 0


def test_09_boundary(criterion, boundary_plus, boundary_minus):
    with criterion(9, "boundary expansions classify and stay in the growth envelope for k <= 200"):
        assert str(classify_derivative(A, boundary_plus)) == "PlusInfinity"
        assert str(classify_derivative(A, boundary_minus)) == "Zero"
        for x in (boundary_plus, boundary_minus):
            records = boundary_growth(A, x, 200)
            assert len(records) == 200
            for r in records:
                assert r.envelope.lo == 1
                assert r.envelope.contains(r.ratio)


def test_10_g_growth(criterion, boundary_plus):
    with criterion(10, "g(k) exceeds 10 at some k <= 2000 on the f -> +inf fixture"):
        g = g_sequence(boundary_plus, 2000)
        first = next(k for k, v in enumerate(g, 1) if v.lo > 10)
        assert first <= 2000


def test_11_takagi_limit(criterion):
    with criterion(11, "normalized Takagi quotients: 0 at y = 1/3, 1/3 at y = 1/7"):
        third = from_fraction(Fraction(1, 3))
        mags = []
        for t in range(8, 33):
            q = normalized_quotient(third, Fraction(1, 4 ** t)).value
            mags.append(max(abs(q.lo), abs(q.hi)))
        assert all(u >= v for u, v in zip(mags, mags[1:]))
        assert mags[-1] < Fraction(15, 100)
        # partial-sum oracle at the coarsest step
        h = Fraction(1, 4 ** 8)
        t0, tail = takagi_with_bound(Fraction(1, 3), 80)
        t1, _ = takagi_with_bound(Fraction(1, 3) + h, 80)
        # the package reports exactly 0 here; the oracle agrees to within its tail bound
        assert mags[0] == 0
        assert abs(t1 - t0) <= 2 * tail
        q = normalized_quotient(from_fraction(Fraction(1, 7)), Fraction(1, 4 ** 32)).value
        assert abs(q.mid - Fraction(1, 3)) < Fraction(1, 10)


def test_12_composition(criterion, sparse_ones):
    with criterion(12, "composition quotient below 1e-2 at depth 40 and Zero verdict"):
        a = Fraction(9, 10)
        assert DigitStats(sparse_ones).d1 == Fraction(1, 10)
        (entry,) = composition_slope_series(a, sparse_ones, [40])
        assert entry.quotient.hi < Fraction(1, 100)
        assert str(classify_composition(a, sparse_ones)) == "Zero"


def test_13_monte_carlo(criterion):
    with criterion(13, "Monte Carlo sup-discrepancy within 0.002 (one seeded retry)"):
        grid = [Fraction(j, 64) for j in range(65)]
        ok = False
        for seed in (1, 2):
            report = empirical_cdf(A, 10 ** 6, 40, grid, seed=seed, delta=1e-3)
            assert math.isclose(report.dkw_radius, 0.00195, abs_tol=1e-5)
            if report.sup_discrepancy <= 0.002:
                ok = True
                break
        assert ok


def _plot(args, tmp_path, name):
    path = tmp_path / name
    assert main(["plot", *args, "--format", "csv", "--output", str(path)]) == 0
    return path.read_bytes()


def test_14_figures(criterion, tmp_path):
    with criterion(14, "plot CSV monotone, composition curves emitted, reruns bit-identical"):
        args = ["--a", "3/10", "--curve", "lebesgue", "--grid", "1024"]
        first = _plot(args, tmp_path, "fig1a.csv")
        assert first == _plot(args, tmp_path, "fig1b.csv")
        rows = list(csv.reader(io.StringIO(first.decode())))
        assert rows[0] == ["x", "y"] and len(rows) == 1026
        ys = [Fraction(r[1]) for r in rows[1:]]
        assert all(u <= v for u, v in zip(ys, ys[1:]))
        for a in ("1/5", "2/5"):
            args = ["--a", a, "--curve", "composition", "--grid", "1024"]
            out = _plot(args, tmp_path, f"fig2-{a[0]}a.csv")
            assert out == _plot(args, tmp_path, f"fig2-{a[0]}b.csv")
            rows = list(csv.reader(io.StringIO(out.decode())))
            assert rows[0] == ["x", "lo", "hi"] and len(rows) == 1026
            for r in rows[1:]:
                lo, hi = Fraction(r[1]), Fraction(r[2])
                assert 0 <= lo <= hi <= 1
            # endpoints: T vanishes at 0 and 1
            assert rows[1][1:] == ["0", "0"] and rows[-1][1:] == ["0", "0"]
