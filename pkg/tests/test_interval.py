import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from singular_lab.density import (CriticalDensity, as_bias, complement_density,
                                  density_enclosure, l0, parse_rational)
from singular_lab.interval import (Interval, exp_enclosure, log_enclosure,
                                   power_enclosure)

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=200)


@st.composite
def intervals(draw):
    a, b = draw(fracs), draw(fracs)
    return Interval(min(a, b), max(a, b))


def test_empty_rejected():
    with pytest.raises(ValueError):
        Interval(1, 0)


@given(intervals(), intervals(), fracs, fracs)
def test_arithmetic_is_inclusion_isotone(x, y, u, v):
    u = min(max(u, x.lo), x.hi)
    v = min(max(v, y.lo), y.hi)
    assert (x + y).contains(u + v)
    assert (x - y).contains(u - v)
    assert (x * y).contains(u * v)
    if y.sign():
        assert (x / y).contains(u / v)


def test_division_by_zero_straddle():
    with pytest.raises(ZeroDivisionError):
        Interval(1, 2) / Interval(-1, 1)


def test_round_out():
    x = Interval(Fraction(1, 3), Fraction(2, 3)).round_out(4)
    assert x == Interval(Fraction(5, 16), Fraction(11, 16))


@pytest.mark.parametrize("v", [Fraction(3, 10), Fraction(7, 10), 2, Fraction(1, 1000)])
def test_log_enclosure(v):
    e = log_enclosure(v, 80)
    assert e.width < Fraction(1, 2 ** 70)
    assert float(e.lo) <= math.log(float(v)) + 1e-15 and math.log(float(v)) - 1e-15 <= float(e.hi)


def test_exp_log_round_trip():
    e = exp_enclosure(log_enclosure(Fraction(3, 7), 100), 100)
    assert e.contains(Fraction(3, 7))


def test_power_integer_exact():
    assert power_enclosure(Fraction(2, 3), 5, 10) == Interval.point(Fraction(32, 243))
    half = power_enclosure(2, Fraction(1, 2), 80)
    assert half.lo ** 2 <= 2 <= half.hi ** 2


class TestDensity:
    def test_bias_parsing(self):
        assert as_bias("3/10") == Fraction(3, 10)
        assert as_bias("0.3") == Fraction(3, 10)
        for bad in ("1/2", "0", "1", "5/4"):
            with pytest.raises(ValueError):
                as_bias(bad)
        with pytest.raises(TypeError):
            as_bias(0.3)

    def test_parse_rational_rejects_ellipsis(self):
        for bad in ("0.333...", "0.(3)", "0.3…"):
            with pytest.raises(ValueError):
                parse_rational(bad)

    def test_l0_value(self):
        e = l0(Fraction(3, 10), 60)
        assert e.width <= Fraction(1, 2 ** 60)
        assert abs(float(e.mid) - 0.602887895) < 1e-9
        ref = math.log(0.6) / (math.log(0.3) - math.log(0.7))
        assert abs(float(e.mid) - ref) < 1e-12

    @given(st.integers(1, 99).filter(lambda i: i != 50))
    def test_l0_symmetry(self, i):
        a = Fraction(i, 100)
        s = l0(a, 50) + l0(1 - a, 50)
        assert s.contains(1)
        assert (l0(a, 50).sign() == 1)
        assert (l0(a, 50) - Fraction(1, 2)).sign() == (1 if a < Fraction(1, 2) else -1)

    def test_l0_monotone_decreasing(self):
        grid = [l0(Fraction(i, 100), 60) for i in range(1, 100) if i != 50]
        assert all(u.lo > v.hi for u, v in zip(grid, grid[1:]))

    def test_critical_density_symbol(self):
        c = CriticalDensity(Fraction(3, 10))
        assert str(c) == "l0(3/10)"
        assert c.complement() == CriticalDensity(Fraction(7, 10))
        assert complement_density(c) == c.complement()
        assert complement_density(Fraction(1, 3)) == Fraction(2, 3)
        assert density_enclosure(c, 40) == l0(Fraction(3, 10), 40)
