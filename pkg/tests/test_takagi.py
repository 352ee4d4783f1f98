from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import takagi_partial_floor, takagi_with_bound
from singular_lab.digits import Programmatic, from_fraction
from singular_lab.interval import Interval
from singular_lab.takagi import (add_dyadic, normalized_quotient, takagi_eval, takagi_exact,
                                 takagi_on_cylinder, takagi_partial)

rationals = st.fractions(min_value=0, max_value=1, max_denominator=300)


@pytest.mark.parametrize("x, t", [
    (0, 0), (1, 0), (Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 4), Fraction(1, 2)),
    (Fraction(1, 3), Fraction(2, 3)), (Fraction(1, 7), Fraction(22, 49)),
])
def test_known_values(x, t):
    assert takagi_exact(x) == t


@given(rationals)
@settings(max_examples=200)
def test_exact_within_oracle_tail(x):
    partial, tail = takagi_with_bound(x, 60)
    t = takagi_exact(x)
    assert partial <= t <= partial + tail


@given(rationals, st.integers(0, 30))
def test_partial_sums_agree(x, k):
    assert takagi_partial(x, k) == takagi_partial_floor(x, k)


@given(rationals)
def test_symmetry(x):
    assert takagi_exact(x) == takagi_exact(1 - x)


@given(st.integers(0, 2 ** 8 - 1))
def test_cylinder_enclosure(j):
    lo = Fraction(j, 2 ** 8)
    box = takagi_on_cylinder(lo, 8)
    for i in range(9):
        assert box.contains(takagi_exact(lo + Fraction(i, 2 ** 11)))


def test_eval_programmatic_matches_rational():
    e = from_fraction(Fraction(5, 11))
    box = takagi_eval(Programmatic(e.digit), 50)
    assert box.contains(takagi_exact(Fraction(5, 11)))
    assert box.width <= Fraction(1, 2 ** 50)


def test_add_dyadic_programmatic():
    p = Programmatic(from_fraction(Fraction(1, 3)).digit)
    moved = add_dyadic(p, Fraction(1, 16))
    assert moved.prefix(30) == from_fraction(Fraction(1, 3) + Fraction(1, 16)).prefix(30)
    with pytest.raises(ValueError):
        add_dyadic(p, Fraction(1, 3))


class TestQuotient:
    def test_one_third_along_quarter_powers(self):
        y = from_fraction(Fraction(1, 3))
        for t in range(2, 20):
            q = normalized_quotient(y, Fraction(1, 4 ** t))
            assert q.value == Interval.point(0)

    def test_one_seventh_along_eighth_powers(self):
        y = from_fraction(Fraction(1, 7))
        for t in range(1, 12):
            assert normalized_quotient(y, Fraction(1, 8 ** t)).value.contains(Fraction(1, 3))

    def test_against_oracle(self):
        y = Fraction(1, 5)
        for j in (3, 7, 12):
            h = Fraction(1, 2 ** j)
            q = normalized_quotient(from_fraction(y), h).value
            lo_y, tail = takagi_with_bound(y, 80)
            lo_m, _ = takagi_with_bound(y + h, 80)
            approx = (lo_m - lo_y) / (h * j)
            assert abs(float(q.mid) - float(approx)) < float(tail) * 2 ** (j + 1)

    def test_negative_step(self):
        q = normalized_quotient(from_fraction(Fraction(1, 3)), -Fraction(1, 16))
        expected = (takagi_exact(Fraction(1, 3) - Fraction(1, 16)) - Fraction(2, 3)) / (-Fraction(1, 16) * 4)
        assert q.value.contains(expected)

    @pytest.mark.parametrize("h", [0, Fraction(1, 2), Fraction(3, 16)])
    def test_bad_steps(self, h):
        with pytest.raises(ValueError):
            normalized_quotient(from_fraction(Fraction(1, 3)), h)
