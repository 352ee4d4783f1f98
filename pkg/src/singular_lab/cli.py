"""Command-line front end: ``singular-lab <subcommand> [flags]``.

Exit status is 0 on success, 2 on usage errors and 1 on domain errors.
The default precision exponent comes from ``SINGULAR_LAB_PRECISION`` (64).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Optional

from . import analysis, classify, lebesgue, sim, takagi
from .density import as_bias, parse_rational
from .digits import (BinaryExpansion, DigitStats, format_literal, from_fraction,
                     make_boundary_expansion, parse_literal)
from .interval import Interval, as_interval

SUBCOMMANDS = ("eval", "invert", "takagi", "classify", "slopes", "c1", "keyeq",
               "compose", "simulate", "plot")
CURVES = ("lebesgue", "inverse", "takagi", "composition")
FORMATS = ("text", "csv", "svg")
BOUNDARY_OFFSETS = {
    "+sqrt": lambda k: math.isqrt(k),
    "-sqrt": lambda k: -math.isqrt(k),
    "zero": lambda k: 0,
}


def default_precision() -> int:
    raw = os.environ.get("SINGULAR_LAB_PRECISION")
    if not raw:
        return 64
    try:
        m = int(raw)
    except ValueError:
        raise SystemExit(f"SINGULAR_LAB_PRECISION must be an integer, got {raw!r}")
    if m < 1:
        raise SystemExit("SINGULAR_LAB_PRECISION must be >= 1")
    return m


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    a: Optional[Fraction] = None
    x: Optional[str] = None
    y: Optional[str] = None
    precision: int = 64
    depth: int = 48
    count: int = 40
    scales: Optional[tuple] = None
    side: str = "right"
    target: str = "lebesgue"
    samples: int = 1_000_000
    digits: int = 40
    grid: int = 64
    seed: int = 0
    delta: float = 1e-3
    curve: str = "lebesgue"
    format: str = "text"
    output: Optional[str] = None

    def to_argv(self) -> list:
        """Flags reproducing this config through :func:`parse_args`."""
        argv = [self.subcommand]
        accepted = subcommand_options(self.subcommand)
        for f in fields(self):
            if f.name not in accepted:
                continue
            v = getattr(self, f.name)
            if v is None:
                continue
            flag = "--" + f.name
            if f.name == "scales":
                v = ",".join(map(str, v))
            argv += [flag, str(v)]
        return argv


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _bias(text: str) -> Fraction:
    try:
        return as_bias(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _scales(text: str) -> tuple:
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"scales must be comma-separated integers: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singular-lab",
        description="Lebesgue's singular function, its inverse and Takagi's function.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    m_default = default_precision()

    def add(name, help_text, needs_a=True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if needs_a:
            p.add_argument("--a", type=_bias, required=True,
                           help="bias as p/q or a terminating decimal")
        else:
            p.add_argument("--a", type=_bias, help="bias (unused)")
        p.add_argument("--precision", "-m", type=_positive_int, default=m_default,
                       help="absolute error target 2^-m (env SINGULAR_LAB_PRECISION)")
        p.add_argument("--format", choices=FORMATS, default="text")
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        return p

    point_help = "expansion literal: 0.b<pre>(<period>), dyadic:<j>/2^<N>, p/q, or boundary:{+sqrt,-sqrt,zero}"

    p = add("eval", "enclose L_a(x)")
    p.add_argument("--x", required=True, help=point_help)

    p = add("invert", "leading binary digits of L_a^-1(y)")
    p.add_argument("--y", required=True, help="rational in [0, 1]")
    p.add_argument("--depth", type=_positive_int, default=48)

    p = add("takagi", "enclose Takagi's function T(x)", needs_a=False)
    p.add_argument("--x", required=True, help=point_help)

    p = add("classify", "classify the derivative of L_a at x (or of T o L_a^-1 at L_a(x))")
    p.add_argument("--x", required=True, help=point_help)
    p.add_argument("--target", choices=("lebesgue", "composition"), default="lebesgue")

    p = add("slopes", "difference quotients of L_a along dyadic scales")
    p.add_argument("--x", required=True, help=point_help)
    p.add_argument("--side", choices=("right", "left"), default="right")
    p.add_argument("--count", type=_positive_int, default=40,
                   help="number of default scales (zero/one positions)")
    p.add_argument("--scales", type=_scales, help="explicit comma-separated scale exponents")

    p = add("c1", "C1(x, k) records with their bounds")
    p.add_argument("--x", required=True, help=point_help)
    p.add_argument("--count", type=_positive_int, default=40)

    p = add("keyeq", "exact residual of the increment identity at p_k")
    p.add_argument("--x", required=True, help="rational expansion literal")
    p.add_argument("--count", type=_positive_int, default=10)

    p = add("compose", "difference quotients of T o L_a^-1 at x = L_a(y)")
    p.add_argument("--y", required=True, help=point_help)
    p.add_argument("--scales", type=_scales, default=(10, 20, 30, 40),
                   help="depths d; the step in y is 2^-p_d")

    p = add("simulate", "Monte Carlo CDF of the biased-coin number against L_a")
    p.add_argument("--samples", type=_positive_int, default=1_000_000)
    p.add_argument("--digits", type=_positive_int, default=40)
    p.add_argument("--grid", type=_positive_int, default=64, help="grid j/G, G a power of two")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", type=float, default=1e-3)

    p = add("plot", "curve data: L_a, its inverse, T, or T o L_a^-1 on a uniform grid")
    p.add_argument("--curve", choices=CURVES, default="lebesgue")
    p.add_argument("--grid", type=_positive_int, default=1024)
    p.add_argument("--depth", type=_positive_int, default=32,
                   help="inversion depth for inverse/composition curves")
    return parser


def subcommand_options(name: str) -> set:
    parser = build_parser()
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    return {a.dest for a in sub.choices[name]._actions if a.dest != "help"}


def parse_args(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    values = {f.name: getattr(ns, f.name) for f in fields(RunConfig) if hasattr(ns, f.name)}
    return RunConfig(**values)


def _point(text: str, a: Optional[Fraction]) -> BinaryExpansion:
    if text.startswith("boundary:"):
        rule = text.split(":", 1)[1]
        if rule not in BOUNDARY_OFFSETS:
            raise ValueError(f"unknown boundary offset {rule!r}; choose from {sorted(BOUNDARY_OFFSETS)}")
        if a is None:
            raise ValueError("boundary expansions need --a")
        return make_boundary_expansion(a, BOUNDARY_OFFSETS[rule], 200)
    return parse_literal(text)


def fmt(v) -> str:
    """Lossless rendering: p/q for rationals."""
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _pair(v) -> list:
    v = as_interval(v)
    return [fmt(v.lo), fmt(v.hi)]


def _text_interval(v) -> str:
    v = as_interval(v)
    if v.is_point:
        return fmt(v.lo)
    return f"[{float(v.lo):.17g}, {float(v.hi):.17g}]"


class _Table:
    def __init__(self, header):
        self.header = list(header)
        self.rows = []

    def add(self, *row):
        self.rows.append([str(c) for c in row])

    def csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        w.writerows(self.rows)
        return buf.getvalue()


def _svg(points, title: str) -> str:
    width, height, pad = 800, 600, 40
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    sx = (width - 2 * pad) / ((x1 - x0) or 1)
    sy = (height - 2 * pad) / ((y1 - y0) or 1)
    coords = " ".join(f"{pad + (x - x0) * sx:.3f},{height - pad - (y - y0) * sy:.3f}"
                      for x, y in points)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<title>{title}</title>\n'
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>\n'
        f'<polyline fill="none" stroke="black" stroke-width="1" points="{coords}"/>\n'
        '</svg>\n'
    )


# -- subcommand bodies: each returns (text, table) ---------------------------

def _cmd_eval(cfg):
    x = _point(cfg.x, cfg.a)
    v = lebesgue.eval(cfg.a, x, cfg.precision)
    t = _Table(["a", "x", "lo", "hi"])
    t.add(fmt(cfg.a), format_literal(x), *_pair(v))
    return _text_interval(v), t


def _cmd_invert(cfg):
    y = parse_rational(cfg.y)
    inv = lebesgue.invert(cfg.a, y, cfg.depth)
    digits = "".join(map(str, inv.digits))
    exact = format_literal(inv.exact) if inv.exact is not None else ""
    t = _Table(["a", "y", "depth", "digits", "lo", "hi", "exact"])
    t.add(fmt(cfg.a), fmt(y), cfg.depth, digits, fmt(inv.lo), fmt(inv.hi), exact)
    text = exact if exact else f"0.b{digits}...  in [{fmt(inv.lo)}, {fmt(inv.hi)}]"
    return text, t


def _cmd_takagi(cfg):
    x = _point(cfg.x, cfg.a)
    v = takagi.takagi_eval(x, cfg.precision)
    t = _Table(["x", "lo", "hi"])
    t.add(format_literal(x), *_pair(v))
    return _text_interval(v), t


def _cmd_classify(cfg):
    x = _point(cfg.x, cfg.a)
    if cfg.target == "composition":
        verdict = classify.classify_composition(cfg.a, x)
    else:
        verdict = classify.classify_derivative(cfg.a, x)
    t = _Table(["a", "x", "target", "class"])
    t.add(fmt(cfg.a), format_literal(x), cfg.target, str(verdict))
    return str(verdict), t


def _cmd_slopes(cfg):
    x = _point(cfg.x, cfg.a)
    s = analysis.slope_series(cfg.a, x, cfg.scales, cfg.side, cfg.precision, cfg.count)
    t = _Table(["scale", "quotient_lo", "quotient_hi"])
    lines = []
    for scale, q in s.entries:
        t.add(scale, *_pair(q))
        lines.append(f"{scale}\t{float(q.mid):.10g}")
    if not s.squeeze_frame:
        lines.append("# note: user-supplied scales lie outside the zero-position squeeze frame")
    return "\n".join(lines), t


def _cmd_c1(cfg):
    x = _point(cfg.x, cfg.a)
    t = _Table(["k", "p_k", "c1_lo", "c1_hi", "bound_lo", "bound_hi"])
    lines = []
    for r in analysis.c1_series(cfg.a, x, cfg.count, cfg.precision):
        t.add(r.k, r.p_k, *_pair(r.c1), fmt(r.bounds[0]), fmt(r.bounds[1]))
        lines.append(f"{r.k}\t{r.p_k}\t{_text_interval(r.c1)}\t{'ok' if r.within_bounds else 'OUT OF BOUNDS'}")
    return "\n".join(lines), t


def _cmd_keyeq(cfg):
    x = parse_literal(cfg.x)
    t = _Table(["k", "p_k", "residual"])
    lines = []
    st = DigitStats(x)
    for k in range(1, cfg.count + 1):
        r = analysis.key_equation_residual(cfg.a, x, k)
        t.add(k, st.zero_pos(k), fmt(r))
        lines.append(f"{k}\t{fmt(r)}")
    return "\n".join(lines), t


def _cmd_compose(cfg):
    y = _point(cfg.y, cfg.a)
    entries = analysis.composition_slope_series(cfg.a, y, cfg.scales, cfg.precision)
    t = _Table(["depth", "scale", "h_lo", "h_hi", "quotient_lo", "quotient_hi",
                "factor1_lo", "factor1_hi", "factor2_lo", "factor2_hi"])
    lines = []
    for e in entries:
        t.add(e.depth, e.scale, *_pair(e.h), *_pair(e.quotient), *_pair(e.factor1), *_pair(e.factor2))
        lines.append(f"{e.depth}\t{e.scale}\t{float(e.quotient.mid):.6g}\t"
                     f"{float(e.factor1.mid):.6g}\t{float(e.factor2.mid):.6g}")
    return "\n".join(lines), t


def _cmd_simulate(cfg):
    g = cfg.grid
    if g & (g - 1):
        raise ValueError(f"--grid must be a power of two, got {g}")
    grid = [Fraction(j, g) for j in range(g + 1)]
    r = sim.empirical_cdf(cfg.a, cfg.samples, cfg.digits, grid, cfg.seed, cfg.delta)
    t = _Table(["x", "empirical", "exact", "abs_error"])
    for x, f, l, e in r.rows():
        t.add(fmt(x), repr(f), fmt(l), repr(e))
    text = (f"samples={r.n} digits={r.m} seed={r.seed}\n"
            f"sup discrepancy = {r.sup_discrepancy:.6g}\n"
            f"DKW radius (delta={cfg.delta:g}) = {r.dkw_radius:.6g}\n"
            f"straddle bound = {r.straddle_bound:.3g}\n"
            f"{'PASS' if r.passed else 'FAIL'}")
    return text, t


def _cmd_plot(cfg):
    rows = plot_rows(cfg.a, cfg.curve, cfg.grid, cfg.depth, cfg.precision)
    if cfg.curve == "lebesgue" and all(v.is_point for _, v in rows):
        t = _Table(["x", "y"])
        for x, v in rows:
            t.add(fmt(x), fmt(v.lo))
    else:
        t = _Table(["x", "lo", "hi"])
        for x, v in rows:
            t.add(fmt(x), *_pair(v))
    points = [(float(x), float(v.mid)) for x, v in rows]
    text = "\n".join(f"{x:.10g}\t{y:.10g}" for x, y in points)
    return text, t, _svg(points, f"{cfg.curve} a={fmt(cfg.a)}")


def plot_rows(a, curve: str, grid: int, depth: int = 32, m: int = 64) -> list:
    """(x, Interval) pairs at x = i/grid, i = 0..grid."""
    a = as_bias(a)
    out = []
    for i in range(grid + 1):
        x = Fraction(i, grid)
        if curve == "lebesgue":
            v = lebesgue.eval(a, from_fraction(x), m)
        elif curve == "takagi":
            v = takagi.takagi_eval(from_fraction(x), m)
        elif curve == "inverse":
            inv = lebesgue.invert(a, x, depth, verify=False)
            v = Interval.point(inv.exact.value) if inv.exact is not None else inv.bracket
        elif curve == "composition":
            v = analysis.composition_value(a, x, depth)
        else:
            raise ValueError(f"unknown curve {curve!r}")
        out.append((x, v))
    return out


COMMANDS = {
    "eval": _cmd_eval, "invert": _cmd_invert, "takagi": _cmd_takagi,
    "classify": _cmd_classify, "slopes": _cmd_slopes, "c1": _cmd_c1,
    "keyeq": _cmd_keyeq, "compose": _cmd_compose, "simulate": _cmd_simulate,
    "plot": _cmd_plot,
}


def execute(cfg: RunConfig) -> str:
    """Run a parsed config and return the rendered output."""
    if cfg.subcommand != "takagi" and cfg.a is None:
        raise ValueError("--a is required")
    result = COMMANDS[cfg.subcommand](cfg)
    text, table = result[0], result[1]
    if cfg.format == "csv":
        return table.csv()
    if cfg.format == "svg":
        if cfg.subcommand != "plot":
            raise ValueError("--format svg is only available for plot")
        return result[2]
    return text + "\n"


def main(argv=None) -> int:
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = execute(cfg)
    except (ValueError, ArithmeticError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


run = main


if __name__ == "__main__":
    sys.exit(main())
