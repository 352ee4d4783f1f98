"""Closed intervals with exact rational endpoints.

Everything the package computes is either an exact :class:`~fractions.Fraction`
or an :class:`Interval` of fractions.  Transcendental quantities (logarithms,
real powers) are enclosed with :mod:`mpmath`'s interval context and converted
back to fractions, so downstream comparisons are always exact.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from mpmath import iv

Number = Union[int, Fraction]

# mpmath keeps interval precision in a process-wide attribute.
_IV_LOCK = threading.RLock()


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, v: Number) -> "Interval":
        return cls(Fraction(v), Fraction(v))

    @classmethod
    def hull(cls, *values: "Number | Interval") -> "Interval":
        los, his = [], []
        for v in values:
            v = as_interval(v)
            los.append(v.lo)
            his.append(v.hi)
        return cls(min(los), max(his))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, other: "Number | Interval") -> bool:
        other = as_interval(other)
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "Number | Interval") -> bool:
        other = as_interval(other)
        return self.lo <= other.hi and other.lo <= self.hi

    def sign(self) -> int:
        """+1 or -1 if the interval excludes zero, else 0."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def round_out(self, bits: int) -> "Interval":
        """Widen to the enclosing interval with endpoints on the grid 2**-bits."""
        scale = 1 << bits
        lo = Fraction((self.lo.numerator * scale) // self.lo.denominator, scale)
        hi = Fraction(-((-self.hi.numerator * scale) // self.hi.denominator), scale)
        return Interval(lo, hi)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __add__(self, other: "Number | Interval") -> "Interval":
        other = as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other: "Number | Interval") -> "Interval":
        other = as_interval(other)
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other: "Number | Interval") -> "Interval":
        return as_interval(other) - self

    def __mul__(self, other: "Number | Interval") -> "Interval":
        other = as_interval(other)
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other: "Number | Interval") -> "Interval":
        other = as_interval(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError(f"division by interval containing zero: {other}")
        return self * Interval(1 / other.hi, 1 / other.lo)

    def __rtruediv__(self, other: "Number | Interval") -> "Interval":
        return as_interval(other) / self

    def __float__(self) -> float:
        return float(self.mid)

    def __str__(self) -> str:
        if self.is_point:
            return str(self.lo)
        return f"[{float(self.lo):.17g}, {float(self.hi):.17g}]"


def as_interval(v: "Number | Interval") -> Interval:
    if isinstance(v, Interval):
        return v
    return Interval.point(v)


# -- mpmath bridge ---------------------------------------------------------

def _mpf_tuple_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    if man == 0 and exp != 0:
        raise ArithmeticError("non-finite interval endpoint")
    v = Fraction(int(man)) * (Fraction(2) ** exp)
    return -v if sign else v


def _to_iv(v: "Number | Interval"):
    v = as_interval(v)
    lo = iv.mpf(v.lo.numerator) / v.lo.denominator
    hi = iv.mpf(v.hi.numerator) / v.hi.denominator
    return iv.mpf([lo.a, hi.b])


def _from_iv(x) -> Interval:
    lo, hi = x._mpi_
    return Interval(_mpf_tuple_to_fraction(lo), _mpf_tuple_to_fraction(hi))


def log_enclosure(v: "Number | Interval", bits: int) -> Interval:
    """Enclosure of the natural log of a positive rational (or interval)."""
    v = as_interval(v)
    if v.lo <= 0:
        raise ValueError(f"log of non-positive value {v}")
    with _IV_LOCK:
        saved = iv.prec
        iv.prec = bits
        try:
            return _from_iv(iv.log(_to_iv(v)))
        finally:
            iv.prec = saved


def exp_enclosure(v: "Number | Interval", bits: int) -> Interval:
    with _IV_LOCK:
        saved = iv.prec
        iv.prec = bits
        try:
            return _from_iv(iv.exp(_to_iv(v)))
        finally:
            iv.prec = saved


def power_enclosure(base: Number, exponent: "Number | Interval", bits: int) -> Interval:
    """Enclose ``base ** exponent`` for a positive rational base and real exponent."""
    exponent = as_interval(exponent)
    if exponent.is_point and exponent.lo.denominator == 1:
        return Interval.point(Fraction(base) ** int(exponent.lo))
    return exp_enclosure(log_enclosure(base, bits) * exponent, bits)
