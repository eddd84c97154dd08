"""Exact commutative algebra for symbolic squares, Fitting ideals and evolutions."""

from .exactfield import GF, QQ, ContextError
from .groebner import BudgetExceeded, budget_scope, buchberger, syzygies
from .idealcalc import Ideal, PreconditionError, saturate
from .polyring import ParseError, Polynomial, Ring, parse_ring

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "ContextError",
    "BudgetExceeded",
    "budget_scope",
    "buchberger",
    "syzygies",
    "Ideal",
    "PreconditionError",
    "saturate",
    "ParseError",
    "Polynomial",
    "Ring",
    "parse_ring",
    "__version__",
]
