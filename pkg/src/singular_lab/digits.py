"""Binary expansions of points in [0, 1] and their digit statistics.

Three kinds of expansion are modelled:

* :class:`Finite` -- a dyadic ``j / 2**N`` with ``0 <= j < 2**N``, written with
  trailing zeros.
* :class:`Periodic` -- an eventually periodic expansion, i.e. any other
  rational.  ``x = 1`` lives here as the all-ones expansion ``0.(1)``.
* :class:`Programmatic` -- an arbitrary digit rule ``k -> eps_k`` together
  with *declared* tail information (digit density, deviation behaviour),
  which cannot be read off finitely many digits.

Digits are indexed from 1, matching ``x = sum eps_k 2**-k``.
"""

from __future__ import annotations

import math
import re
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .density import (CriticalDensity, Density, as_bias, complement_density,
                      density_enclosure)
from .interval import Interval

# Programmatic expansions are scanned at most this far when hunting for
# the k-th zero or one.
SCAN_LIMIT = 2_000_000

F_LIMITS = ("+inf", "-inf", "bounded", "unknown")


class BinaryExpansion(ABC):
    """Common interface of the three expansion kinds."""

    @abstractmethod
    def digit(self, k: int) -> int:
        """The k-th binary digit, k >= 1."""

    @property
    @abstractmethod
    def is_dyadic(self) -> bool: ...

    @property
    def value(self) -> Optional[Fraction]:
        """Exact value when the expansion is rational, else None."""
        return None

    @property
    def d1(self) -> Optional[Density]:
        """Density of ones, when known exactly or declared."""
        return None

    def prefix(self, n: int) -> tuple:
        return tuple(self.digit(k) for k in range(1, n + 1))

    def bracket(self, m: int) -> Interval:
        """Dyadic bounds lo <= x <= hi with hi - lo <= 2**-m."""
        if self.value is not None:
            return Interval.point(self.value)
        lo = Fraction(int("".join(map(str, self.prefix(m))) or "0", 2), 2 ** m)
        return Interval(lo, lo + Fraction(1, 2 ** m))

    @abstractmethod
    def shift(self, k: int) -> "BinaryExpansion":
        """The expansion of frac(2**k x), i.e. digits eps_{k+1}, eps_{k+2}, ..."""

    @abstractmethod
    def reflect(self) -> "BinaryExpansion":
        """The expansion of 1 - x."""


@dataclass(frozen=True)
class Finite(BinaryExpansion):
    """Dyadic point ``x < 1`` in its trailing-zeros form."""

    x: Fraction

    def __post_init__(self):
        x = Fraction(self.x)
        if not 0 <= x < 1:
            raise ValueError(f"Finite expansion needs 0 <= x < 1, got {x} (use canonicalize for 1)")
        if not _is_power_of_two(x.denominator):
            raise ValueError(f"{x} is not dyadic")
        object.__setattr__(self, "x", x)

    @property
    def level(self) -> int:
        """Smallest N with x = j / 2**N."""
        return self.x.denominator.bit_length() - 1

    def digit(self, k: int) -> int:
        _check_index(k)
        return (self.x.numerator << k) // self.x.denominator & 1

    @property
    def is_dyadic(self) -> bool:
        return True

    @property
    def value(self) -> Fraction:
        return self.x

    @property
    def d1(self) -> Fraction:
        return Fraction(0)

    def shift(self, k: int) -> "Finite":
        y = self.x * 2 ** k
        return Finite(y - math.floor(y))

    def reflect(self) -> BinaryExpansion:
        return from_fraction(1 - self.x)

    def __str__(self) -> str:
        return f"dyadic:{self.x.numerator}/2^{self.level}"


@dataclass(frozen=True)
class Periodic(BinaryExpansion):
    """Expansion ``0.<preamble>(<period>)``; use :func:`canonicalize` to build."""

    preamble: tuple
    period: tuple

    def __post_init__(self):
        pre, per = tuple(self.preamble), tuple(self.period)
        _check_digits(pre + per)
        if not per:
            raise ValueError("period must be nonempty")
        if not any(per):
            raise ValueError("an all-zeros period is a dyadic; use Finite")
        object.__setattr__(self, "preamble", pre)
        object.__setattr__(self, "period", per)

    def digit(self, k: int) -> int:
        _check_index(k)
        s = len(self.preamble)
        if k <= s:
            return self.preamble[k - 1]
        return self.period[(k - s - 1) % len(self.period)]

    @property
    def is_dyadic(self) -> bool:
        # after canonicalization only 0.(1) = 1 is dyadic
        return _is_power_of_two(self.value.denominator)

    @property
    def value(self) -> Fraction:
        return _periodic_value(self.preamble, self.period)

    @property
    def d1(self) -> Fraction:
        return Fraction(sum(self.period), len(self.period))

    def shift(self, k: int) -> BinaryExpansion:
        s, n = len(self.preamble), len(self.period)
        if k <= s:
            return canonicalize((self.preamble[k:], self.period))
        r = (k - s) % n
        return canonicalize(((), self.period[r:] + self.period[:r]))

    def reflect(self) -> BinaryExpansion:
        return from_fraction(1 - self.value)

    def __str__(self) -> str:
        return "0.b" + "".join(map(str, self.preamble)) + "(" + "".join(map(str, self.period)) + ")"


class _CachedRule:
    """Memoizes a digit rule; safe to share between threads."""

    def __init__(self, rule: Callable[[int], int]):
        self._rule = rule
        self._digits: list = []
        self._lock = threading.Lock()

    def __call__(self, k: int) -> int:
        if k <= len(self._digits):
            return self._digits[k - 1]
        with self._lock:
            while len(self._digits) < k:
                d = self._rule(len(self._digits) + 1)
                if d not in (0, 1):
                    raise ValueError(f"digit rule returned {d!r} at position {len(self._digits) + 1}")
                self._digits.append(d)
        return self._digits[k - 1]


@dataclass(frozen=True, eq=False)
class Programmatic(BinaryExpansion):
    """Digits from a rule, plus declared tail metadata.

    Programmatic expansions are treated as non-dyadic.  ``d1`` is the declared
    density of ones (a Fraction or a :class:`CriticalDensity`); ``limsup`` and
    ``liminf`` declare bounds on I_n/n when no density exists; ``f_limit`` is
    the declared behaviour of f(k) = p_k - k/D0 (one of ``F_LIMITS``) and
    ``f_regular`` declares f(k+1)/f(k) -> 1.
    """

    rule: Callable[[int], int]
    declared_d1: Optional[Density] = None
    f_limit: str = "unknown"
    f_regular: bool = False
    limsup: Optional[Fraction] = None
    liminf: Optional[Fraction] = None
    label: str = ""
    zero_positions: Optional[Callable[[int], int]] = field(default=None, repr=False)

    def __post_init__(self):
        if self.f_limit not in F_LIMITS:
            raise ValueError(f"f_limit must be one of {F_LIMITS}, got {self.f_limit!r}")
        if not isinstance(self.rule, _CachedRule):
            object.__setattr__(self, "rule", _CachedRule(self.rule))
        if self.declared_d1 is not None and not isinstance(self.declared_d1, CriticalDensity):
            d = Fraction(self.declared_d1)
            if not 0 <= d <= 1:
                raise ValueError(f"declared density {d} outside [0, 1]")
            object.__setattr__(self, "declared_d1", d)
        for name in ("limsup", "liminf"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, Fraction(v))

    def digit(self, k: int) -> int:
        _check_index(k)
        return self.rule(k)

    @property
    def is_dyadic(self) -> bool:
        return False

    @property
    def d1(self) -> Optional[Density]:
        return self.declared_d1

    def shift(self, k: int) -> "Programmatic":
        rule = self.rule
        return Programmatic(lambda n: rule(n + k), self.declared_d1, self.f_limit,
                            self.f_regular, self.limsup, self.liminf,
                            f"shift({self.label},{k})" if self.label else "")

    def reflect(self) -> "Programmatic":
        rule = self.rule
        d1 = None if self.declared_d1 is None else complement_density(self.declared_d1)
        # zeros of 1 - x are the ones of x, so f for 1 - x is -g for x
        f_limit = {"+inf": "-inf", "-inf": "+inf"}.get(self.f_limit, self.f_limit)
        return Programmatic(
            lambda n: 1 - rule(n), d1, f_limit, self.f_regular,
            None if self.liminf is None else 1 - self.liminf,
            None if self.limsup is None else 1 - self.limsup,
            f"1-({self.label})" if self.label else "",
        )

    def __str__(self) -> str:
        return self.label or "programmatic"


# -- construction ----------------------------------------------------------

def from_fraction(x) -> BinaryExpansion:
    """Canonical expansion of a rational in [0, 1]."""
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"x = {x} outside [0, 1]")
    if x == 1:
        return Periodic((), (1,))
    den = x.denominator
    if _is_power_of_two(den):
        return Finite(x)
    s = (den & -den).bit_length() - 1
    odd = den >> s
    plen = _multiplicative_order_of_two(odd)
    digits = []
    r = x
    for _ in range(s + plen):
        r *= 2
        d = int(r >= 1)
        digits.append(d)
        r -= d
    return Periodic(tuple(digits[:s]), tuple(digits[s:]))


def canonicalize(raw) -> BinaryExpansion:
    """Bring any accepted description of a point to canonical form.

    Accepts a finite digit sequence, a ``(preamble, period)`` pair, a rational
    in [0, 1] (int/Fraction), or an existing expansion.  Rational inputs are
    reduced to the unique canonical representative; Programmatic expansions
    pass through unchanged.
    """
    if isinstance(raw, Programmatic):
        return raw
    if isinstance(raw, BinaryExpansion):
        return from_fraction(raw.value)
    if isinstance(raw, (int, Fraction)) and not isinstance(raw, bool):
        return from_fraction(raw)
    if isinstance(raw, tuple) and len(raw) == 2 and all(isinstance(p, (tuple, list)) for p in raw):
        pre, per = tuple(raw[0]), tuple(raw[1])
        _check_digits(pre + per)
        if not per:
            raise ValueError("period must be nonempty")
        return from_fraction(_periodic_value(pre, per))
    digits = tuple(raw)
    _check_digits(digits)
    return from_fraction(sum((Fraction(d, 2 ** k) for k, d in enumerate(digits, 1)), Fraction(0)))


def dyadic(j: int, n: int) -> BinaryExpansion:
    if not 0 <= j <= 2 ** n:
        raise ValueError(f"{j}/2^{n} outside [0, 1]")
    return from_fraction(Fraction(j, 2 ** n))


def digit_prefix(x: BinaryExpansion, n: int) -> tuple:
    if n < 0:
        raise ValueError("prefix length must be >= 0")
    return x.prefix(n)


# -- statistics ------------------------------------------------------------

class DigitStats:
    """Lazily evaluated digit counts and positions of one expansion.

    ``ones_count(n)`` is I_n, ``zeros_count(n)`` is O_n, ``zero_pos(k)`` is
    p_k and ``one_pos(k)`` is q_k.  Results are cached; instances may be
    shared between threads.
    """

    def __init__(self, x: BinaryExpansion):
        self.x = x
        self._ones_prefix = [0]
        self._zeros: list = []
        self._ones: list = []
        self._lock = threading.Lock()

    @property
    def d1(self) -> Optional[Density]:
        return self.x.d1

    @property
    def d0(self) -> Optional[Density]:
        d1 = self.x.d1
        return None if d1 is None else complement_density(d1)

    def _extend_to(self, n: int):
        if n <= len(self._ones_prefix) - 1:
            return
        with self._lock:
            for k in range(len(self._ones_prefix), n + 1):
                d = self.x.digit(k)
                self._ones_prefix.append(self._ones_prefix[-1] + d)
                (self._ones if d else self._zeros).append(k)

    def ones_count(self, n: int) -> int:
        if n < 0:
            raise ValueError("n must be >= 0")
        self._extend_to(n)
        return self._ones_prefix[n]

    def zeros_count(self, n: int) -> int:
        return n - self.ones_count(n)

    def zero_pos(self, k: int) -> int:
        return self._position(k, self._zeros, want=0)

    def one_pos(self, k: int) -> int:
        return self._position(k, self._ones, want=1)

    def _position(self, k: int, found: list, want: int) -> int:
        if k < 1:
            raise ValueError("k must be >= 1")
        if len(found) >= k:
            return found[k - 1]
        limit = self._scan_limit(k, want)
        n = len(self._ones_prefix) - 1
        while len(found) < k:
            if n >= limit:
                raise ValueError(f"no {k}-th digit {want} within the first {limit} digits of {self.x}")
            n = min(limit, max(2 * n, n + 64))
            self._extend_to(n)
        return found[k - 1]

    def _scan_limit(self, k: int, want: int) -> int:
        x = self.x
        if isinstance(x, Finite):
            if want == 0:
                return x.level + k
            return x.level
        if isinstance(x, Periodic):
            per = sum(1 for d in x.period if d == want)
            if per == 0:
                return len(x.preamble)
            return len(x.preamble) + len(x.period) * (k // per + 1)
        return SCAN_LIMIT


def stats(x: BinaryExpansion) -> DigitStats:
    return DigitStats(x)


def _deviation_sequence(x: BinaryExpansion, K: int, m: int, zeros: bool) -> list:
    st = DigitStats(x)
    d = st.d0 if zeros else st.d1
    if d is None:
        raise ValueError(f"density of {'zeros' if zeros else 'ones'} is unknown for {x}")
    enc = density_enclosure(d, m)
    if not (enc.lo > 0 and enc.hi < 1):
        raise ValueError(f"degenerate density {d}; need 0 < D < 1")
    out = []
    for k in range(1, K + 1):
        if zeros:
            v = st.zero_pos(k) - k / (d if not isinstance(d, CriticalDensity) else enc)
        else:
            v = k / (d if not isinstance(d, CriticalDensity) else enc) - st.one_pos(k)
        out.append(v)
    return out


def f_sequence(x: BinaryExpansion, K: int, m: int = 64) -> list:
    """f(k) = p_k - k/D0 for k = 1..K; Fractions, or Intervals if D0 is irrational."""
    return _deviation_sequence(x, K, m, zeros=True)


def g_sequence(x: BinaryExpansion, K: int, m: int = 64) -> list:
    """g(k) = k/D1 - q_k for k = 1..K."""
    return _deviation_sequence(x, K, m, zeros=False)


# -- boundary expansions ---------------------------------------------------

class _BoundaryZeros:
    """Zero positions round_half_up(k / D0) + offset(k), collisions pushed right."""

    def __init__(self, d0: CriticalDensity, offset: Callable[[int], int]):
        self.d0 = d0
        self.offset = offset
        self.positions: list = []
        self.members: set = set()
        self._lock = threading.Lock()

    def _nearest(self, k: int) -> int:
        m = 64
        while True:
            t = (k / self.d0.enclosure(m)) + Fraction(1, 2)
            lo, hi = math.floor(t.lo), math.floor(t.hi)
            if lo == hi:
                return lo
            m *= 2

    def position(self, k: int) -> int:
        if k <= len(self.positions):
            return self.positions[k - 1]
        with self._lock:
            while len(self.positions) < k:
                j = len(self.positions) + 1
                p = self._nearest(j) + int(self.offset(j))
                prev = self.positions[-1] if self.positions else 0
                if p == prev:
                    p = prev + 1
                elif p < prev:
                    raise ValueError(f"offset makes zero positions non-monotone at k={j}: {p} < {prev}")
                if p < 1:
                    raise ValueError(f"offset pushes zero position {j} to {p} < 1")
                self.positions.append(p)
                self.members.add(p)
        return self.positions[k - 1]

    def digit(self, n: int) -> int:
        while not self.positions or self.positions[-1] < n:
            self.position(len(self.positions) + 1)
        return 0 if n in self.members else 1


def make_boundary_expansion(a, offset: Callable[[int], int], K_max: int = 1000,
                            f_limit: Optional[str] = None) -> Programmatic:
    """Expansion whose digit density sits exactly on the critical line of ``a``.

    The k-th zero is placed at ``round_half_up(k / D0) + offset(k)`` with
    ``D0 = l0(1 - a)``, so that f(k) = offset(k) + O(1).  The first
    ``K_max`` positions are generated and validated eagerly.  Unless given,
    the declared f-limit follows the sign of the offset (``bounded`` when the
    offset vanishes on 1..K_max).
    """
    a = as_bias(a)
    offsets = [int(offset(k)) for k in range(1, K_max + 1)]
    if any(o > 0 for o in offsets) and any(o < 0 for o in offsets):
        raise ValueError("offset must not change sign")
    zeros = _BoundaryZeros(CriticalDensity(1 - a), offset)
    zeros.position(K_max)
    if f_limit is None:
        if all(o == 0 for o in offsets):
            f_limit = "bounded"
        else:
            f_limit = "+inf" if any(o > 0 for o in offsets) else "-inf"
    return Programmatic(zeros.digit, CriticalDensity(a), f_limit, True,
                        label=f"boundary(a={a})", zero_positions=zeros.position)


# -- literals --------------------------------------------------------------

_PERIODIC_RE = re.compile(r"^0\.b([01]*)(?:\(([01]+)\))?$")
_DYADIC_RE = re.compile(r"^dyadic:(\d+)/2\^(\d+)$")


def parse_literal(text: str) -> BinaryExpansion:
    """Parse ``0.b<preamble>(<period>)``, ``dyadic:<j>/2^<N>`` or ``p/q``."""
    text = text.strip()
    m = _DYADIC_RE.match(text)
    if m:
        return dyadic(int(m.group(1)), int(m.group(2)))
    m = _PERIODIC_RE.match(text)
    if m:
        pre = tuple(int(c) for c in m.group(1))
        if m.group(2) is None:
            return canonicalize(pre)
        return canonicalize((pre, tuple(int(c) for c in m.group(2))))
    if re.match(r"^\d+/\d+$", text) or text in ("0", "1"):
        return from_fraction(Fraction(text))
    raise ValueError(
        f"cannot parse expansion literal {text!r}; expected 0.b<digits>(<period>), "
        "dyadic:<j>/2^<N> or p/q"
    )


def format_literal(x: BinaryExpansion) -> str:
    return str(x)


# -- helpers ---------------------------------------------------------------

def _periodic_value(pre: Sequence[int], per: Sequence[int]) -> Fraction:
    s, n = len(pre), len(per)
    head = Fraction(int("".join(map(str, pre)) or "0", 2), 2 ** s)
    block = Fraction(int("".join(map(str, per)), 2), 2 ** n - 1)
    return head + block / 2 ** s


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def _multiplicative_order_of_two(q: int) -> int:
    if q == 1:
        return 1
    k, r = 1, 2 % q
    while r != 1:
        r = 2 * r % q
        k += 1
    return k


def _check_index(k: int):
    if k < 1:
        raise ValueError(f"digit positions start at 1, got {k}")


def _check_digits(digits: Iterable[int]):
    for d in digits:
        if d not in (0, 1):
            raise ValueError(f"binary digit expected, got {d!r}")
