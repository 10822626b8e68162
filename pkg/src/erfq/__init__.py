"""erfq: conic-domain function classes under the Jackson q-derivative.

Truncated-series engine, conic mapping functions, coefficient recovery for
the starlike/convex classes (subordination and quasi-subordination), the
closed-form Fekete-Szego bound catalog, and a randomized/extremal
verification layer with a CLI front end.
"""

from .series import (
    DEFAULT_ORDER,
    QBracketContext,
    TruncatedSeries,
    coefficients_via_cauchy,
    compose,
    div,
    hadamard,
    identity,
    monomial,
    mul,
    one,
    q_bracket,
    q_derivative,
    q_integral,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_ORDER",
    "QBracketContext",
    "TruncatedSeries",
    "coefficients_via_cauchy",
    "compose",
    "div",
    "hadamard",
    "identity",
    "monomial",
    "mul",
    "one",
    "q_bracket",
    "q_derivative",
    "q_integral",
    "__version__",
]
