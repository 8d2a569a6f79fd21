"""A small proof-checking kernel for dependent type theory.

Core syntax with nameless variables (`terms`), reduction and judgmental
equality (`reduce`), bidirectional type checking (`check`), concrete
syntax (`parser`, `pretty`), file processing (`loader`) and the command
line (`cli`).
"""

from .check import CheckError, Diagnostic, check, check_context, check_declaration, infer, infer_universe
from .reduce import BudgetExhausted, ReductionBudget, conv, normalize, whnf
from .terms import (
    Context,
    Declaration,
    Signature,
    Term,
    as_int,
    numeral,
    shift,
    subst,
    well_scoped,
)

__all__ = [
    "CheckError",
    "Diagnostic",
    "check",
    "check_context",
    "check_declaration",
    "infer",
    "infer_universe",
    "BudgetExhausted",
    "ReductionBudget",
    "conv",
    "normalize",
    "whnf",
    "Context",
    "Declaration",
    "Signature",
    "Term",
    "as_int",
    "numeral",
    "shift",
    "subst",
    "well_scoped",
]

__version__ = "0.1.0"
