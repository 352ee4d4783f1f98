"""Monte Carlo check that L_a is the distribution function of a biased-coin number.

Each sample t = sum w_n 2**-n is built from m coin tosses, w_n = 0 (heads)
with probability a.  Tosses are drawn as integers uniform on [0, q) for
a = p/q, so the bias is exact.  The generator is numpy's PCG64 seeded with
the caller's seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .density import as_bias
from .lebesgue import eval_dyadic_exact

MAX_DIGITS = 62  # samples are packed into int64


@dataclass(frozen=True)
class CoinSample:
    digits: tuple
    lo: Fraction
    hi: Fraction


def _tosses(rng: np.random.Generator, a: Fraction, shape) -> np.ndarray:
    """1 where the toss is tails (digit 1), 0 for heads."""
    return (rng.integers(0, a.denominator, size=shape) >= a.numerator).astype(np.int64)


def sample_t(a, seed: int, m: int) -> CoinSample:
    a = as_bias(a)
    if m < 1:
        raise ValueError("need at least one digit")
    rng = np.random.default_rng(seed)
    digits = tuple(int(d) for d in _tosses(rng, a, m))
    lo = sum((Fraction(d, 2 ** n) for n, d in enumerate(digits, 1)), Fraction(0))
    return CoinSample(digits, lo, lo + Fraction(1, 2 ** m))


def sample_values(a, seed: int, n: int, m: int, chunk: int = 200_000) -> np.ndarray:
    """Lower ends of n truncated samples, as integers on the grid 2**-m."""
    a = as_bias(a)
    if not 1 <= m <= MAX_DIGITS:
        raise ValueError(f"digit count must be in [1, {MAX_DIGITS}]")
    rng = np.random.default_rng(seed)
    weights = np.left_shift(np.int64(1), np.arange(m - 1, -1, -1, dtype=np.int64))
    out = np.empty(n, dtype=np.int64)
    for start in range(0, n, chunk):
        stop = min(n, start + chunk)
        out[start:stop] = _tosses(rng, a, (stop - start, m)) @ weights
    return out


def dkw_radius(n: int, delta: float) -> float:
    """sqrt(ln(2/delta) / (2n)): sup-deviation bound holding with prob. 1 - delta."""
    return math.sqrt(math.log(2 / delta) / (2 * n))


@dataclass(frozen=True)
class CdfReport:
    a: Fraction
    n: int
    m: int
    seed: int
    grid: tuple
    empirical: tuple
    exact: tuple
    sup_discrepancy: float
    dkw_radius: float
    straddle_bound: float

    @property
    def tolerance(self) -> float:
        return self.dkw_radius + self.straddle_bound

    @property
    def passed(self) -> bool:
        return self.sup_discrepancy <= self.tolerance

    def rows(self):
        for x, f, l in zip(self.grid, self.empirical, self.exact):
            yield x, f, l, abs(f - float(l))


def empirical_cdf(a, n: int, m: int, grid: Sequence, seed: int = 0,
                  delta: float = 1e-3) -> CdfReport:
    """Compare the empirical distribution of t with L_a on dyadic grid points.

    A sample is counted at x when its truncated lower end is <= x; it can
    only be miscounted when that lower end equals x exactly, which happens
    with probability at most max(a, 1-a)**(m - level).  That bound is
    reported as ``straddle_bound``.
    """
    a = as_bias(a)
    if n < 1:
        raise ValueError("need at least one sample")
    grid = tuple(Fraction(g) for g in grid)
    levels = []
    for g in grid:
        if not 0 <= g <= 1 or g.denominator & (g.denominator - 1):
            raise ValueError(f"grid point {g} is not a dyadic in [0, 1]")
        level = g.denominator.bit_length() - 1
        if level >= m:
            raise ValueError(f"grid point {g} has level {level} >= digit count {m}")
        levels.append(level)
    values = np.sort(sample_values(a, seed, n, m))
    scaled = [g.numerator * (1 << (m - lvl)) for g, lvl in zip(grid, levels)]
    counts = np.searchsorted(values, np.array(scaled, dtype=np.int64), side="right")
    empirical = tuple(float(c) / n for c in counts)
    exact = tuple(eval_dyadic_exact(a, g) for g in grid)
    sup = max(abs(f - float(l)) for f, l in zip(empirical, exact))
    b = float(max(a, 1 - a))
    straddle = max(b ** (m - lvl) for lvl in levels)
    return CdfReport(a, n, m, seed, grid, empirical, exact, sup,
                     dkw_radius(n, delta), straddle)
