"""Regularity and a*-invariants of powers of equigenerated ideals."""

__version__ = "0.1.0"

from .kernel import GF, QQ, Field, MonomialOrder, Polynomial, Ring, parse_polynomial
from .groebner import Budget, BudgetExceeded, Ideal, ideal_power
from .resolve import NEG_INF, GradedPresentation

__all__ = [
    "GF",
    "QQ",
    "Field",
    "MonomialOrder",
    "Polynomial",
    "Ring",
    "parse_polynomial",
    "Budget",
    "BudgetExceeded",
    "Ideal",
    "ideal_power",
    "NEG_INF",
    "GradedPresentation",
]
