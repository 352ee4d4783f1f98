"""Numerical checks of the slope machinery behind the derivative classification.

Right-hand difference quotients of L_a are taken along dyadic scales
2**-s, by default the zero positions p_k of x, where the increment factors as

    L_a(x + 2**-p_k) - L_a(x) = a**k (1-a)**(p_k - k) C1(x, k),
    C1(x, k) = 1 + (1 - a/(1-a)) C(x, k),
    C(x, k) = sum_l a**(n(l) - p_k - l) (1-a)**l,

n(l) being the position of the l-th one after p_k.  Left-hand quotients are
obtained from the reflection L_a(1 - u) = 1 - L_{1-a}(u).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .density import as_bias, complement_density, density_enclosure
from .digits import (BinaryExpansion, DigitStats, Finite, Periodic, Programmatic,
                     canonicalize, f_sequence, from_fraction)
from .interval import Interval, as_interval, power_enclosure
from .lebesgue import eval_periodic_exact, increment_at_scale, invert
from .takagi import (add_dyadic, normalized_quotient, takagi_eval, takagi_exact,
                     takagi_on_cylinder)

RIGHT, LEFT = "right", "left"

Exact = Union[Fraction, Interval]


@dataclass(frozen=True)
class SlopeSeries:
    """Difference quotients (L_a(x + 2**-s) - L_a(x)) / 2**-s, or the left analogue."""

    side: str
    scales: tuple
    quotients: tuple
    # False when the scales were supplied by the caller rather than p_k / q_k
    squeeze_frame: bool = True

    @property
    def entries(self):
        return list(zip(self.scales, self.quotients))

    def __len__(self) -> int:
        return len(self.scales)


@dataclass(frozen=True)
class C1Record:
    k: int
    p_k: int
    c1: Interval
    bounds: tuple

    @property
    def within_bounds(self) -> bool:
        return Interval(*self.bounds).contains(self.c1)


def c1_bounds(a) -> tuple:
    """(min(1, (1-a)/a), max(1, (1-a)/a))."""
    a = as_bias(a)
    r = (1 - a) / a
    return (min(Fraction(1), r), max(Fraction(1), r))


def _prepare(x) -> BinaryExpansion:
    return x if isinstance(x, Programmatic) else canonicalize(x)


def default_scales(x: BinaryExpansion, count: int, side: str = RIGHT) -> list:
    """Zero positions p_1..p_count (right) or one positions q_1..q_count (left).

    For a dyadic x = j/2**N the right scales are N+1, ..., N+count.
    """
    x = _prepare(x)
    if side == LEFT:
        x = x.reflect()
    if x.is_dyadic:
        level = x.level if isinstance(x, Finite) else 0
        return list(range(level + 1, level + count + 1))
    st = DigitStats(x)
    return [st.zero_pos(k) for k in range(1, count + 1)]


def slope_series(a, x, scales: Optional[Sequence[int]] = None, side: str = RIGHT,
                 m: int = 64, count: int = 40) -> SlopeSeries:
    a = as_bias(a)
    x = _prepare(x)
    if side not in (RIGHT, LEFT):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    frame = scales is None
    if scales is None:
        scales = default_scales(x, count, side)
    scales = tuple(int(s) for s in scales)
    if any(b <= s for s, b in zip(scales, scales[1:])):
        raise ValueError("scales must be strictly increasing")
    # left quotients of L_a at x are right quotients of L_{1-a} at 1 - x
    bias, point = (a, x) if side == RIGHT else (1 - a, x.reflect())
    quotients = []
    for s in scales:
        inc = increment_at_scale(bias, point, s, m)
        quotients.append(as_interval(inc) * 2 ** s)
    return SlopeSeries(side, scales, tuple(quotients), frame)


def _positions_after(x: BinaryExpansion, p: int):
    """Yield positions n > p holding a one, in order (finite for dyadics)."""
    if isinstance(x, Finite):
        for n in range(p + 1, x.level + 1):
            if x.digit(n):
                yield n
        return
    n = p
    while True:
        n += 1
        if x.digit(n):
            yield n


def c_direct(a, x: BinaryExpansion, k: int, terms: int = 400) -> Exact:
    """C(x, k) summed over the ones n(l) after p_k.

    Exact for rational x (geometric resummation of the periodic tail); for
    programmatic x the sum over positions p_k < n <= p_k + terms is enclosed
    with the tail bound b**(terms+1)/(1-b), b = max(a, 1-a).
    """
    a = as_bias(a)
    x = _prepare(x)
    p = DigitStats(x).zero_pos(k)
    if isinstance(x, Finite):
        return sum((a ** (n - p - l) * (1 - a) ** l
                    for l, n in enumerate(_positions_after(x, p), 1)), Fraction(0))
    if isinstance(x, Periodic):
        s, P = len(x.preamble), len(x.period)
        e = max(p, s)
        e += (-(e - s)) % P
        head, l = Fraction(0), 0
        for n in range(p + 1, e + 1):
            if x.digit(n):
                l += 1
                head += a ** (n - p - l) * (1 - a) ** l
        block = Fraction(0)
        for n in range(e + 1, e + P + 1):
            if x.digit(n):
                l += 1
                block += a ** (n - p - l) * (1 - a) ** l
        o = sum(x.period)
        rho = a ** (P - o) * (1 - a) ** o
        return head + block / (1 - rho)
    total, l = Fraction(0), 0
    for n in range(p + 1, p + terms + 1):
        if x.digit(n):
            l += 1
            total += a ** (n - p - l) * (1 - a) ** l
    b = max(a, 1 - a)
    return Interval(total, total + b ** (terms + 1) / (1 - b))


def c1_direct(a, x: BinaryExpansion, k: int, terms: int = 400) -> Exact:
    a = as_bias(a)
    return 1 + (1 - a / (1 - a)) * c_direct(a, x, k, terms)


def c1_series(a, x, K: int, m: int = 64) -> list:
    """C1(x, k) = [L_a(x + 2**-p_k) - L_a(x)] / (a**k (1-a)**(p_k-k)), k = 1..K."""
    a = as_bias(a)
    x = _prepare(x)
    if x.is_dyadic:
        raise ValueError("c1_series needs a non-dyadic point")
    st = DigitStats(x)
    bounds = c1_bounds(a)
    out = []
    for k in range(1, K + 1):
        p = st.zero_pos(k)
        inc = increment_at_scale(a, x, p, m)
        out.append(C1Record(k, p, as_interval(inc) / (a ** k * (1 - a) ** (p - k)), bounds))
    return out


def key_equation_residual(a, x, k: int) -> Fraction:
    """[L_a(x + 2**-p_k) - L_a(x)] - a**k (1-a)**(p_k-k) C1(x, k), exactly.

    The left side uses the periodic closed form of L_a; the right side the
    direct resummation of C(x, k) over the ones following p_k.
    """
    a = as_bias(a)
    x = canonicalize(x)
    if isinstance(x, Programmatic):
        raise ValueError("key_equation_residual needs a rational point")
    p = DigitStats(x).zero_pos(k)
    moved = from_fraction(x.value + Fraction(1, 2 ** p))
    lhs = eval_periodic_exact(a, moved) - eval_periodic_exact(a, x)
    rhs = a ** k * (1 - a) ** (p - k) * c1_direct(a, x, k)
    return lhs - rhs


def squeeze_dyadic(a, x, k: int, h: Fraction) -> tuple:
    """Outer and middle quotients for 2**-(k+1) <= h <= 2**-k at a dyadic x.

    Returns (lower, middle, upper); monotonicity of L_a forces
    lower <= middle <= upper.
    """
    a = as_bias(a)
    x = canonicalize(x)
    h = Fraction(h)
    if not Fraction(1, 2 ** (k + 1)) <= h <= Fraction(1, 2 ** k):
        raise ValueError(f"h = {h} not within [2^-{k + 1}, 2^-{k}]")
    v = x.value
    base = eval_periodic_exact(a, x)
    lower = increment_at_scale(a, x, k + 1) / Fraction(1, 2 ** k)
    upper = increment_at_scale(a, x, k) / Fraction(1, 2 ** (k + 1))
    middle = (eval_periodic_exact(a, from_fraction(v + h)) - base) / h
    return lower, middle, upper


def squeeze_zero_positions(a, x, k: int, h: Fraction) -> tuple:
    """As :func:`squeeze_dyadic` with 2**-p_{k+1} <= h <= 2**-p_k at a rational x."""
    a = as_bias(a)
    x = canonicalize(x)
    st = DigitStats(x)
    p, p_next = st.zero_pos(k), st.zero_pos(k + 1)
    h = Fraction(h)
    if not Fraction(1, 2 ** p_next) <= h <= Fraction(1, 2 ** p):
        raise ValueError(f"h = {h} not within [2^-{p_next}, 2^-{p}]")
    base = eval_periodic_exact(a, x)
    lower = increment_at_scale(a, x, p_next) / Fraction(1, 2 ** p)
    upper = increment_at_scale(a, x, p) / Fraction(1, 2 ** p_next)
    middle = (eval_periodic_exact(a, from_fraction(x.value + h)) - base) / h
    return lower, middle, upper


@dataclass(frozen=True)
class BoundaryRecord:
    k: int
    p_k: int
    f_k: Interval
    ratio: Interval
    envelope: Interval


def boundary_growth(a, x: BinaryExpansion, K: int, m: int = 64) -> list:
    """Slope at p_k divided by (2(1-a))**f(k) on a critical-line expansion.

    On the critical line this ratio equals C1(x, k); ``envelope`` is
    [min C1 bound, max C1 bound * 2**(1/D0)].
    """
    a = as_bias(a)
    d0 = complement_density(x.d1)
    fs = f_sequence(x, K, m)
    series = slope_series(a, x, side=RIGHT, m=m, count=K)
    lo_b, hi_b = c1_bounds(a)
    scale = power_enclosure(2, 1 / density_enclosure(d0, m), m)
    envelope = Interval(lo_b, (hi_b * scale).hi)
    out = []
    for k, (s, q, f) in enumerate(zip(series.scales, series.quotients, fs), 1):
        growth = power_enclosure(2 * (1 - a), f, m + 16)
        out.append(BoundaryRecord(k, s, as_interval(f), q / growth, envelope))
    return out


@dataclass(frozen=True)
class CompositionEntry:
    depth: int
    scale: int
    h: Interval
    quotient: Interval
    factor1: Interval
    factor2: Interval


def composition_slope_series(a, y, depths: Sequence[int], m: int = 64) -> list:
    """Difference quotients of T o L_a^{-1} at x = L_a(y).

    For depth d the step h is chosen so that L_a^{-1}(x + h) - y = 2**-p_d,
    i.e. h = L_a(y + 2**-p_d) - L_a(y).  Each entry carries the quotient and
    its two factors: the normalized Takagi quotient at y, and
    2**-p_d log2(2**p_d) / h.
    """
    a = as_bias(a)
    y = _prepare(y)
    if y.is_dyadic:
        raise ValueError("composition_slope_series needs a non-dyadic point")
    st = DigitStats(y)
    out = []
    for d in depths:
        p = st.zero_pos(d)
        step = Fraction(1, 2 ** p)
        h = as_interval(increment_at_scale(a, y, p, m))
        f1 = normalized_quotient(y, step, m).value
        f2 = step * p / h
        diff = takagi_eval(add_dyadic(y, step), m + p) - takagi_eval(y, m + p)
        out.append(CompositionEntry(d, p, h, diff / h, f1, f2))
    return out


def composition_value(a, x, depth: int = 32) -> Interval:
    """Enclose (T o L_a^{-1})(x) for rational x from a depth-``depth`` inversion."""
    inv = invert(a, x, depth, verify=False)
    if inv.exact is not None:
        return Interval.point(takagi_exact(inv.exact))
    return takagi_on_cylinder(inv.lo, depth)
