import math
from fractions import Fraction

import numpy as np
import pytest

from singular_lab.sim import dkw_radius, empirical_cdf, sample_t, sample_values

A = Fraction(3, 10)


def test_sample_is_reproducible():
    s1, s2 = sample_t(A, 7, 30), sample_t(A, 7, 30)
    assert s1 == s2
    assert s1.hi - s1.lo == Fraction(1, 2 ** 30)
    assert sample_t(A, 8, 30) != s1


def test_bias_validated():
    with pytest.raises(ValueError):
        sample_t(Fraction(1, 2), 0, 4)
    with pytest.raises(ValueError):
        sample_t(A, 0, 0)


def test_first_digit_mean():
    n = 10 ** 6
    v = sample_values(A, 3, n, 8)
    ones = float(np.mean(v >> 7))
    sigma = math.sqrt(float(A * (1 - A)) / n)
    assert abs(ones - 0.7) < 4 * sigma


def test_values_match_single_samples():
    # the packed integer of a length-m draw is the sample's lower end scaled by 2**m
    v = sample_values(A, 11, 1, 20)
    s = sample_t(A, 11, 20)
    assert Fraction(int(v[0]), 2 ** 20) == s.lo


def test_dkw_radius():
    assert abs(dkw_radius(10 ** 6, 1e-3) - 0.00195) < 1e-5


def test_report_single_sample():
    r = empirical_cdf(A, 1, 10, [Fraction(j, 8) for j in range(9)], seed=2)
    assert set(r.empirical) <= {0.0, 1.0}
    assert list(r.empirical) == sorted(r.empirical)
    assert r.empirical[-1] == 1.0


def test_half_at_small_bias():
    n = 200_000
    r = empirical_cdf(Fraction(1, 5), n, 30, [Fraction(1, 2)], seed=5)
    sigma = math.sqrt(0.2 * 0.8 / n)
    assert r.exact == (Fraction(1, 5),)
    assert abs(r.empirical[0] - 0.2) < 4 * sigma


def test_report_is_consistent_and_reproducible():
    grid = [Fraction(j, 16) for j in range(17)]
    r = empirical_cdf(A, 50_000, 24, grid, seed=9)
    assert r == empirical_cdf(A, 50_000, 24, grid, seed=9)
    assert list(r.empirical) == sorted(r.empirical)
    assert r.sup_discrepancy == max(d for *_, d in r.rows())


@pytest.mark.parametrize("grid", [[Fraction(1, 3)], [Fraction(1, 2 ** 12)], [Fraction(3, 2)]])
def test_grid_validation(grid):
    with pytest.raises(ValueError):
        empirical_cdf(A, 10, 12, grid)
