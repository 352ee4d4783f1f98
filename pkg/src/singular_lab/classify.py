"""Derivative classification for L_a and for T composed with L_a^{-1}.

Verdicts are driven purely by digit statistics: dyadic points, exact or
declared digit densities, declared limsup/liminf bounds on I_n/n, and the
declared behaviour of the zero-position deviation f(k) on the critical line.
Finite digit prefixes never upgrade an Unknown verdict.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .density import HALF, CriticalDensity, Density, as_bias, l0
from .digits import BinaryExpansion, canonicalize
from .interval import Interval, log_enclosure

__all__ = [
    "Rate", "Kind", "Reason", "DerivativeClass", "CriticalDensity",
    "l0", "compare_rate", "classify_derivative", "classify_composition",
]

# interval refinement gives up past this many bits
MAX_BITS = 1 << 16


class Rate(enum.Enum):
    """Position of a**D0 (1-a)**D1 relative to 1/2."""
    BELOW = "Below"
    EQUAL = "Equal"
    ABOVE = "Above"


class Kind(enum.Enum):
    ZERO = "Zero"
    PLUS_INFINITY = "PlusInfinity"
    NOT_DIFFERENTIABLE = "NotDifferentiable"
    UNKNOWN = "Unknown"


class Reason(enum.Enum):
    DYADIC_COMPOSITION = "dyadic-composition"
    BOUNDARY_UNRESOLVED = "boundary-unresolved"
    DENSITY_MISSING = "density-missing"
    DEGENERATE_DENSITY = "degenerate-density"
    NO_BRANCH = "no-branch"


@dataclass(frozen=True)
class DerivativeClass:
    kind: Kind
    right: Optional[Kind] = None
    left: Optional[Kind] = None
    reason: Optional[Reason] = None

    def __post_init__(self):
        if self.kind is Kind.NOT_DIFFERENTIABLE:
            sides = (Kind.ZERO, Kind.PLUS_INFINITY)
            if self.right not in sides or self.left not in sides or self.right is self.left:
                raise ValueError("NotDifferentiable needs distinct one-sided Zero/PlusInfinity")

    def __str__(self) -> str:
        if self.kind is Kind.NOT_DIFFERENTIABLE:
            return f"NotDifferentiable(right={self.right.value}, left={self.left.value})"
        if self.kind is Kind.UNKNOWN:
            return f"Unknown({self.reason.value})"
        return self.kind.value


ZERO = DerivativeClass(Kind.ZERO)
PLUS_INFINITY = DerivativeClass(Kind.PLUS_INFINITY)


def unknown(reason: Reason) -> DerivativeClass:
    return DerivativeClass(Kind.UNKNOWN, reason=reason)


def _on_critical_line(a: Fraction, d1: Fraction) -> bool:
    # a**(s-r) (1-a)**r == 2**-s  with d1 = r/s
    r, s = d1.numerator, d1.denominator
    return a ** (s - r) * (1 - a) ** r * 2 ** s == 1


def compare_rate(a, d1: Density) -> Rate:
    """Compare a**D0 (1-a)**D1 with 1/2, where D0 = 1 - D1.

    Rational densities are tested for equality exactly first; the strict
    side is then found by refining an enclosure of
    D0 log a + D1 log(1-a) + log 2 until it excludes zero.
    """
    a = as_bias(a)
    if isinstance(d1, CriticalDensity):
        if d1.a == a:
            return Rate.EQUAL
    else:
        d1 = Fraction(d1)
        if not 0 <= d1 <= 1:
            raise ValueError(f"density {d1} outside [0, 1]")
        if _on_critical_line(a, d1):
            return Rate.EQUAL
    bits = 64
    while bits <= MAX_BITS:
        dens = d1.enclosure(bits) if isinstance(d1, CriticalDensity) else Interval.point(d1)
        v = ((1 - dens) * log_enclosure(a, bits) + dens * log_enclosure(1 - a, bits)
             + log_enclosure(2, bits))
        s = v.sign()
        if s:
            return Rate.ABOVE if s > 0 else Rate.BELOW
        bits *= 2
    raise ArithmeticError(f"could not separate rate from 1/2 for a={a}, D1={d1}")


def _dyadic_sides(a: Fraction) -> DerivativeClass:
    # right derivative (2a)**k-law: 0 for a < 1/2; left side by reflection
    if a < HALF:
        return DerivativeClass(Kind.NOT_DIFFERENTIABLE, Kind.ZERO, Kind.PLUS_INFINITY)
    return DerivativeClass(Kind.NOT_DIFFERENTIABLE, Kind.PLUS_INFINITY, Kind.ZERO)


def _is_degenerate(d1: Density) -> bool:
    return not isinstance(d1, CriticalDensity) and d1 in (0, 1)


def classify_derivative(a, x: BinaryExpansion) -> DerivativeClass:
    """Class of L_a'(x): Zero, PlusInfinity, NotDifferentiable (dyadic) or Unknown."""
    a = as_bias(a)
    x = canonicalize(x)
    if x.is_dyadic:
        return _dyadic_sides(a)
    d1 = x.d1
    if d1 is not None:
        if _is_degenerate(d1):
            return unknown(Reason.DEGENERATE_DENSITY)
        rate = compare_rate(a, d1)
        if rate is Rate.BELOW:
            return ZERO
        if rate is Rate.ABOVE:
            return PLUS_INFINITY
        return _boundary(a, x)
    return _limsup_liminf(a, x)


def _boundary(a: Fraction, x: BinaryExpansion) -> DerivativeClass:
    f_limit = getattr(x, "f_limit", "unknown")
    if not getattr(x, "f_regular", False) or f_limit not in ("+inf", "-inf"):
        return unknown(Reason.BOUNDARY_UNRESOLVED)
    small_bias = a < HALF
    if f_limit == "+inf":
        return PLUS_INFINITY if small_bias else ZERO
    return ZERO if small_bias else PLUS_INFINITY


def _limsup_liminf(a: Fraction, x: BinaryExpansion) -> DerivativeClass:
    limsup, liminf = getattr(x, "limsup", None), getattr(x, "liminf", None)
    if limsup is None and liminf is None:
        return unknown(Reason.DENSITY_MISSING)
    # for a < 1/2, Below <=> D1 < l0; for a > 1/2, Below <=> D1 > l0
    zero_side = limsup if a < HALF else liminf
    inf_side = liminf if a < HALF else limsup
    if zero_side is not None and compare_rate(a, zero_side) is Rate.BELOW:
        return ZERO
    if inf_side is not None and compare_rate(a, inf_side) is Rate.ABOVE:
        return PLUS_INFINITY
    return unknown(Reason.NO_BRANCH)


def classify_composition(a, y: BinaryExpansion) -> DerivativeClass:
    """Class of (T o L_a^{-1})' at x = L_a(y); only the vanishing case is known."""
    a = as_bias(a)
    y = canonicalize(y)
    if y.is_dyadic:
        return unknown(Reason.DYADIC_COMPOSITION)
    d1 = y.d1
    if d1 is None:
        return unknown(Reason.DENSITY_MISSING)
    if _is_degenerate(d1):
        return unknown(Reason.DEGENERATE_DENSITY)
    if compare_rate(a, d1) is Rate.ABOVE:
        return ZERO
    return unknown(Reason.NO_BRANCH)
