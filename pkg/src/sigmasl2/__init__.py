"""Exact toolkit for sigma-derivation deformations of sl2 and the resulting algebras."""

from .errors import (
    AssumptionRequired,
    BudgetExhausted,
    ConfigError,
    DomainMismatch,
    InconsistentSystem,
    NotClosed,
    ParseError,
    PreconditionError,
    SigmaError,
    ZeroDenominator,
)
from .scalar import ParamField, ParamPoly, RootSpec, Scalar, q_integer

__version__ = "0.1.0"
