"""Takagi's function T(x) = sum_k 2**-k dist(2**k x, Z) and its difference quotients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .digits import BinaryExpansion, Programmatic, canonicalize, from_fraction
from .interval import Interval

TWO_THIRDS = Fraction(2, 3)


def _dist(r: Fraction) -> Fraction:
    return min(r, 1 - r)


def _takagi_rational(x: BinaryExpansion) -> Fraction:
    # frac(2**k x) is the value of the k-fold shift; for rationals it cycles
    seen = {}
    terms = []
    y = x
    k = 0
    while True:
        r = y.value
        if r == 1:
            r = Fraction(0)
        if r in seen:
            break
        seen[r] = k
        terms.append(_dist(r))
        y = y.shift(1)
        k += 1
    start = seen[r]
    head = sum((t / 2 ** i for i, t in enumerate(terms[:start])), Fraction(0))
    cycle = terms[start:]
    block = sum((t / 2 ** i for i, t in enumerate(cycle)), Fraction(0))
    return head + block / (2 ** start * (1 - Fraction(1, 2 ** len(cycle))))


def takagi_exact(x) -> Fraction:
    """T at a rational point, summed in closed form."""
    if isinstance(x, Programmatic):
        raise ValueError("takagi_exact needs a rational point")
    if not isinstance(x, BinaryExpansion):
        x = from_fraction(x)
    return _takagi_rational(canonicalize(x))


def takagi_partial(x, K: int) -> Fraction:
    """Partial sum T_K(x) = sum_{k<K} 2**-k dist(2**k x, Z) for rational x."""
    v = Fraction(x.value if isinstance(x, BinaryExpansion) else x)
    total = Fraction(0)
    for k in range(K):
        y = v * 2 ** k
        total += _dist(y - (y.numerator // y.denominator)) / 2 ** k
    return total


def takagi_eval(x: BinaryExpansion, m: int = 64) -> Interval:
    """Enclose T(x) to width at most 2**-m; a point interval for rational x.

    For non-rational x the enclosure comes from the depth-D dyadic cylinder
    [lo, lo + 2**-D] around x: the first D terms of T are affine there and
    the remaining ones contribute 2**-D T(.) with 0 <= T <= 2/3.
    """
    if not isinstance(x, Programmatic):
        return Interval.point(takagi_exact(x))
    target = Fraction(1, 2 ** m)
    depth = m + 2
    while True:
        out = takagi_on_cylinder(x.bracket(depth).lo, depth)
        if out.width <= target:
            return out
        depth += max(4, out.width.denominator.bit_length() - out.width.numerator.bit_length() - m)


def takagi_on_cylinder(lo: Fraction, depth: int) -> Interval:
    """Enclose T over [lo, lo + 2**-depth] for lo a multiple of 2**-depth."""
    hi = lo + Fraction(1, 2 ** depth)
    t_lo, t_hi = takagi_exact(lo), takagi_exact(hi)
    return Interval(min(t_lo, t_hi), max(t_lo, t_hi) + TWO_THIRDS / 2 ** depth)


def _power_of_two_exponent(h: Fraction) -> int:
    h = abs(h)
    if h.numerator != 1 or h.denominator & (h.denominator - 1):
        raise ValueError(f"step |h| = {h} must be a power of two 2^-j")
    return h.denominator.bit_length() - 1


def add_dyadic(y: BinaryExpansion, h: Fraction) -> BinaryExpansion:
    """Expansion of y + h for a dyadic h, keeping programmatic tails intact."""
    h = Fraction(h)
    if not isinstance(y, Programmatic):
        v = y.value + h
        if not 0 <= v <= 1:
            raise ValueError(f"y + h = {v} outside [0, 1]")
        return from_fraction(v)
    j = h.denominator.bit_length() - 1
    if h.denominator != 2 ** j:
        raise ValueError(f"step {h} is not dyadic")
    head = int("".join(map(str, y.prefix(j))) or "0", 2) + h.numerator
    if not 0 <= head < 2 ** j:
        raise ValueError("y + h leaves [0, 1]")
    new_head = tuple(int(c) for c in format(head, f"0{j}b")) if j else ()
    rule = y.rule
    return Programmatic(lambda n: new_head[n - 1] if n <= j else rule(n),
                        y.declared_d1, y.f_limit, y.f_regular, y.limsup, y.liminf,
                        f"{y.label}+({h})" if y.label else "")


@dataclass(frozen=True)
class NormalizedQuotient:
    """(T(y+h) - T(y)) / (h log2(1/|h|)) with log2(1/|h|) = ``log_scale``."""

    y: BinaryExpansion
    h: Fraction
    log_scale: int
    value: Interval


def normalized_quotient(y: BinaryExpansion, h, m: int = 64) -> NormalizedQuotient:
    h = Fraction(h)
    if h == 0:
        raise ValueError("h must be nonzero")
    j = _power_of_two_exponent(h)
    if j < 2:
        raise ValueError("need |h| < 1/2")
    moved = add_dyadic(y, h)
    denom = h * j
    # enclosure widths scale by 1/|h j| after division
    inner = m + j + 1
    diff = takagi_eval(moved, inner) - takagi_eval(y, inner)
    return NormalizedQuotient(y, h, j, diff / denom)
