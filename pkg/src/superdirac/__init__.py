"""Exact computations with the Dirac operator on the superspace R^(m|2n).

Everything is computed over Q(i, sqrt2) without rounding: polynomial spinor
fields, the super Clifford algebra and its spinor representation, the
osp(m|2n)-invariant operators, and the representation-theoretic checks built
on top of them.
"""

__version__ = "0.1.0"

from .errors import (
    DimensionMismatch,
    DivisionByZero,
    FischerSingular,
    IndexOutOfRange,
    NoCartanConfig,
    ParseError,
    RankUnstable,
    SuperDiracError,
    UnboundedShift,
    UndeclaredParity,
    WindowViolation,
)
from .exactfield import I, ONE, SQRT2, ZERO, Scalar
from .operators import Operator, bracket, commutator, equal_on, make_operator
from .superspace import Element, SpaceConfig

__all__ = [
    "DimensionMismatch",
    "DivisionByZero",
    "Element",
    "FischerSingular",
    "I",
    "IndexOutOfRange",
    "NoCartanConfig",
    "ONE",
    "Operator",
    "ParseError",
    "RankUnstable",
    "SQRT2",
    "Scalar",
    "SpaceConfig",
    "SuperDiracError",
    "UnboundedShift",
    "UndeclaredParity",
    "WindowViolation",
    "ZERO",
    "bracket",
    "commutator",
    "equal_on",
    "make_operator",
]
