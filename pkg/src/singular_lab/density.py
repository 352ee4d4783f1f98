"""Bias parameters and the critical digit density.

The critical density for bias ``a`` is ``log(2a) / (log a - log(1-a))``.
It is irrational for every bias we have met, so it is carried symbolically
as :class:`CriticalDensity` and only enclosed on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Union

from .interval import Interval, log_enclosure

HALF = Fraction(1, 2)


def as_bias(a) -> Fraction:
    """Coerce ``a`` to an exact rational bias, rejecting 0, 1/2, 1 and beyond.

    Strings may be ``"p/q"`` or a terminating decimal such as ``"0.3"``.
    Floats are rejected: their binary value is rarely the intended rational.
    """
    if isinstance(a, float):
        raise TypeError("bias must be exact (int, Fraction or string), not float")
    if isinstance(a, str):
        a = parse_rational(a)
    a = Fraction(a)
    if not 0 < a < 1:
        raise ValueError(f"bias must lie in (0, 1), got {a}")
    if a == HALF:
        raise ValueError("bias 1/2 gives the identity map; it is excluded")
    return a


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "..." in text or "(" in text or "…" in text:
        raise ValueError(
            f"repeating decimal {text!r} has no exact finite form; write it as p/q"
        )
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    try:
        return Fraction(Decimal(text))
    except InvalidOperation:
        raise ValueError(f"not a rational literal: {text!r}") from None


def l0(a, m: int = 64) -> Interval:
    """Enclose the critical density of ``a`` to width at most ``2**-m``."""
    a = as_bias(a)
    bits = m + 16
    while True:
        num = log_enclosure(2 * a, bits)
        den = log_enclosure(a, bits) - log_enclosure(1 - a, bits)
        value = num / den
        if value.width <= Fraction(1, 2 ** m):
            return value
        bits *= 2


@dataclass(frozen=True)
class CriticalDensity:
    """The density ``l0(a)`` held symbolically; compares exactly by bias."""

    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_bias(self.a))

    def enclosure(self, m: int = 64) -> Interval:
        return l0(self.a, m)

    def complement(self) -> "CriticalDensity":
        # l0(a) + l0(1 - a) == 1
        return CriticalDensity(1 - self.a)

    def __str__(self) -> str:
        return f"l0({self.a})"


Density = Union[Fraction, CriticalDensity]


def density_enclosure(d: Density, m: int = 64) -> Interval:
    if isinstance(d, CriticalDensity):
        return d.enclosure(m)
    return Interval.point(d)


def complement_density(d: Density) -> Density:
    if isinstance(d, CriticalDensity):
        return d.complement()
    return 1 - Fraction(d)
