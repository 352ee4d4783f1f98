"""Exact and interval computations for Lebesgue's singular function L_a,
its inverse, Takagi's function, and the classification of L_a' by binary
digit densities."""

from .classify import (CriticalDensity, DerivativeClass, Kind, Rate, Reason,
                       classify_composition, classify_derivative, compare_rate, l0)
from .density import as_bias
from .digits import (BinaryExpansion, DigitStats, Finite, Periodic, Programmatic,
                     canonicalize, digit_prefix, dyadic, f_sequence, from_fraction,
                     g_sequence, make_boundary_expansion, parse_literal, stats)
from .interval import Interval
from .lebesgue import (eval_derham, eval_dyadic_exact, eval_periodic_exact, eval_ulam,
                       increment_at_scale, invert)
from .takagi import normalized_quotient, takagi_eval, takagi_exact

__all__ = [
    "CriticalDensity", "DerivativeClass", "Kind", "Rate", "Reason",
    "classify_composition", "classify_derivative", "compare_rate", "l0", "as_bias",
    "BinaryExpansion", "DigitStats", "Finite", "Periodic", "Programmatic", "canonicalize",
    "digit_prefix", "dyadic", "f_sequence", "from_fraction", "g_sequence",
    "make_boundary_expansion", "parse_literal", "stats", "Interval", "eval_derham",
    "eval_dyadic_exact", "eval_periodic_exact", "eval_ulam", "increment_at_scale", "invert",
    "normalized_quotient", "takagi_eval", "takagi_exact",
]

__version__ = "0.1.0"
