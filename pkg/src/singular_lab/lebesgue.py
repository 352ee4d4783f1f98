"""Evaluation and inversion of Lebesgue's singular function L_a.

Three independent exact routes are provided so they can check each other:

* :func:`eval_dyadic_exact` / :func:`eval_ulam` sum the digit series
  ``(a/(1-a)) * sum eps_n a**(n - I_n) (1-a)**I_n``;
* :func:`eval_derham` unwinds the two-branch functional equation
  ``L(x) = a L(2x)`` / ``L(x) = (1-a) L(2x-1) + a``;
* :func:`eval_periodic_exact` resums the series over an eventually periodic
  digit pattern as a geometric series.

All arithmetic is on :class:`~fractions.Fraction`; non-exact results are
:class:`~singular_lab.interval.Interval` enclosures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .density import as_bias
from .digits import (BinaryExpansion, Finite, Periodic, Programmatic,
                     canonicalize, from_fraction)
from .interval import Interval

Bias = Fraction

HALF = Fraction(1, 2)


def _dyadic_value(x) -> Fraction:
    if isinstance(x, BinaryExpansion):
        v = x.value
        if v is None or not x.is_dyadic:
            raise ValueError(f"{x} is not a dyadic rational")
        return v
    v = Fraction(x)
    if not 0 <= v <= 1:
        raise ValueError(f"x = {v} outside [0, 1]")
    if v.denominator & (v.denominator - 1):
        raise ValueError(f"{v} is not a dyadic rational")
    return v


def _ulam_terms(a: Fraction, digits):
    """Yield the (unscaled) series terms eps_n a**(n-I_n) (1-a)**I_n."""
    ones = 0
    for n, d in enumerate(digits, 1):
        ones += d
        if d:
            yield a ** (n - ones) * (1 - a) ** ones


def eval_dyadic_exact(a, x) -> Fraction:
    """L_a at a dyadic point, from the terminating digit series."""
    a = as_bias(a)
    v = _dyadic_value(x)
    if v == 1:
        return Fraction(1)
    f = Finite(v)
    return a / (1 - a) * sum(_ulam_terms(a, f.prefix(f.level)), Fraction(0))


def eval_derham(a, x) -> Fraction:
    """L_a at a dyadic point by unwinding the functional equation."""
    a = as_bias(a)
    v = _dyadic_value(x)
    # L(x) = offset + scale * L(v) throughout
    offset, scale = Fraction(0), Fraction(1)
    while v not in (0, 1):
        if v <= HALF:
            scale *= a
            v = 2 * v
        else:
            offset += scale * a
            scale *= 1 - a
            v = 2 * v - 1
    return offset + scale * v


def eval_periodic_exact(a, x) -> Fraction:
    """L_a at an eventually periodic point, summing the series in closed form.

    With ``s`` preamble digits and a period holding ``z`` zeros and ``o`` ones,
    every period multiplies the series terms by ``rho = a**z (1-a)**o``.
    """
    a = as_bias(a)
    if isinstance(x, Finite):
        return eval_dyadic_exact(a, x)
    if not isinstance(x, Periodic):
        x = canonicalize(x)
        if isinstance(x, Finite):
            return eval_dyadic_exact(a, x)
        if not isinstance(x, Periodic):
            raise ValueError(f"{x} is not eventually periodic")
    pre, per = x.preamble, x.period
    head = sum(_ulam_terms(a, pre), Fraction(0))
    s, ones_pre = len(pre), sum(pre)
    block = Fraction(0)
    ones = ones_pre
    for i, d in enumerate(per, 1):
        ones += d
        if d:
            n = s + i
            block += a ** (n - ones) * (1 - a) ** ones
    o = sum(per)
    rho = a ** (len(per) - o) * (1 - a) ** o
    return a / (1 - a) * (head + block / (1 - rho))


def ulam_truncation_index(a, m: int) -> int:
    """Smallest N with (a/(1-a)) b**(N+1)/(1-b) <= 2**-(m+1), b = max(a, 1-a)."""
    a = as_bias(a)
    b = max(a, 1 - a)
    target = Fraction(1, 2 ** (m + 1))
    c = a / (1 - a) / (1 - b)
    n = max(0, math.floor(math.log(float(target / c)) / math.log(float(b))) - 2)
    while c * b ** (n + 1) > target:
        n += 1
    while n > 0 and c * b ** n <= target:
        n -= 1
    return n


def eval_ulam(a, x: BinaryExpansion, m: int) -> Interval:
    """Enclose L_a(x) by truncating the digit series, width at most 2**-m."""
    a = as_bias(a)
    if m < 1:
        raise ValueError("precision m must be >= 1")
    if isinstance(x, Finite):
        return Interval.point(eval_dyadic_exact(a, x))
    n = ulam_truncation_index(a, m)
    b = max(a, 1 - a)
    partial = a / (1 - a) * sum(_ulam_terms(a, x.prefix(n)), Fraction(0))
    tail = a / (1 - a) * b ** (n + 1) / (1 - b)
    out = Interval(partial, partial + tail).round_out(2 * m + 2)
    if out.width > Fraction(1, 2 ** m):
        raise ArithmeticError(f"series enclosure too wide: {float(out.width)}")
    return out


def prefix_image(a, digits) -> tuple:
    """(L_a(d), mu(d)) for the dyadic d = 0.digits and its cylinder measure.

    L_a maps [d, d + 2**-n] onto [L_a(d), L_a(d) + mu(d)] with
    mu(d) = a**O_n (1-a)**I_n.
    """
    a = as_bias(a)
    value, mu = Fraction(0), Fraction(1)
    for d in digits:
        if d:
            value += a * mu
            mu *= 1 - a
        else:
            mu *= a
    return value, mu


def eval(a, x: BinaryExpansion, m: int = 64) -> Interval:
    """Enclose L_a(x) to width at most 2**-m, exactly when x is rational."""
    a = as_bias(a)
    if not isinstance(x, Programmatic):
        x = canonicalize(x)
    if isinstance(x, Finite):
        return Interval.point(eval_dyadic_exact(a, x))
    if isinstance(x, Periodic):
        return Interval.point(eval_periodic_exact(a, x))
    target = Fraction(1, 2 ** m)
    value, mu = Fraction(0), Fraction(1)
    k = 0
    # refine the cylinder around x until its image is narrow enough
    while mu > target / 2:
        k += 1
        if x.digit(k):
            value += a * mu
            mu *= 1 - a
        else:
            mu *= a
    return Interval(value, value + mu).round_out(2 * m + 2)


@dataclass(frozen=True)
class Inversion:
    """Result of :func:`invert`: the first digits of L_a^{-1}(y) and a bracket."""

    y: Fraction
    digits: tuple
    lo: Fraction
    hi: Fraction
    exact: Optional[BinaryExpansion] = None

    @property
    def bracket(self) -> Interval:
        return Interval(self.lo, self.hi)


def invert(a, y, depth: int, verify: bool = True) -> Inversion:
    """Peel binary digits of L_a^{-1}(y) off the functional equation.

    At each step y < a gives digit 0 and y <- y/a; y > a gives digit 1 and
    y <- (y-a)/(1-a).  Hitting y = a, 0 or 1 pins x down as a dyadic, which
    is reported in ``exact``.
    """
    a = as_bias(a)
    y = Fraction(y)
    if not 0 <= y <= 1:
        raise ValueError(f"y = {y} outside [0, 1]")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    digits = []
    exact = None
    r = y
    for k in range(1, depth + 1):
        if r == 0 or r == 1 or r == a:
            break
        if r < a:
            digits.append(0)
            r = r / a
        else:
            digits.append(1)
            r = (r - a) / (1 - a)
    n = len(digits)
    lo = sum((Fraction(d, 2 ** k) for k, d in enumerate(digits, 1)), Fraction(0))
    if r in (0, 1, a):
        tail = {0: Fraction(0), 1: Fraction(1), a: HALF}[r]
        exact = from_fraction(lo + tail / 2 ** n)
        digits = list(exact.prefix(depth))
        lo = sum((Fraction(d, 2 ** k) for k, d in enumerate(digits, 1)), Fraction(0))
    hi = lo + Fraction(1, 2 ** depth)
    result = Inversion(y, tuple(digits), lo, hi, exact)
    if verify and not eval_dyadic_exact(a, lo) <= y <= eval_dyadic_exact(a, min(hi, Fraction(1))):
        raise ArithmeticError(f"inversion bracket check failed for y = {y}")
    return result


def increment_at_scale(a, x: BinaryExpansion, k: int,
                       m: int = 64) -> Union[Fraction, Interval]:
    """L_a(x + 2**-k) - L_a(x).

    Exact (a Fraction) for rational x.  For programmatic x the result is an
    Interval whose width is at most 2**-m relative to its lower end.
    """
    a = as_bias(a)
    if k < 1:
        raise ValueError("scale exponent must be >= 1")
    step = Fraction(1, 2 ** k)
    if not isinstance(x, Programmatic):
        x = canonicalize(x)
        v = x.value
        if v + step > 1:
            raise ValueError(f"x + 2^-{k} = {v + step} exceeds 1")
        if isinstance(x, Finite) and k > x.level:
            ones = sum(x.prefix(x.level))
            return a ** (k - ones) * (1 - a) ** ones
        return eval_periodic_exact(a, from_fraction(v + step)) - eval_periodic_exact(a, x)

    # x = d + 2**-k y with d the k-digit prefix; likewise x + 2**-k = d' + 2**-k y
    digits = x.prefix(k)
    head = int("".join(map(str, digits)), 2) + 1
    if head >= 2 ** k:
        raise ValueError(f"x + 2^-{k} exceeds 1")
    shifted = tuple(int(c) for c in format(head, f"0{k}b"))
    _, mu = prefix_image(a, digits)
    _, mu_next = prefix_image(a, shifted)
    if mu_next == mu:
        return Interval.point(mu)
    ratio = abs(mu_next / mu - 1)
    inner = m + 2 + max(0, math.ceil(math.log2(ratio)))
    tail = x.shift(k)
    while True:
        out = mu + (mu_next - mu) * eval(a, tail, inner)
        if out.width <= out.lo / 2 ** m:
            return out
        inner += 8


def reflection_defect(a, x) -> Fraction:
    """L_a(1-x) - (1 - L_{1-a}(x)) at a dyadic x; identically zero."""
    a = as_bias(a)
    v = _dyadic_value(x)
    return eval_dyadic_exact(a, 1 - v) - (1 - eval_dyadic_exact(1 - a, v))
