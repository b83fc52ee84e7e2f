"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SigmaError(Exception):
    """Base class for all errors raised by sigmasl2."""


class DomainMismatch(SigmaError):
    """Operands live over different parameter declarations or rings."""


class ZeroDenominator(SigmaError, ZeroDivisionError):
    """A division or substitution produced a zero denominator."""


class ParseError(SigmaError, ValueError):
    """Syntax error in an expression string.

    Carries the 1-based ``line`` and ``column`` of the offending character.
    """

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.reason = message
        super().__init__(f"{message} at line {self.line}, column {self.column}")


class AssumptionRequired(SigmaError):
    """Elimination needs to divide by an expression nobody asserted nonzero."""

    def __init__(self, expression):
        self.expression = expression
        super().__init__(f"assumption required: {expression} != 0")


class InconsistentSystem(SigmaError):
    """A linear system has no solution; ``residual`` is the offending value."""

    def __init__(self, message: str, residual=None):
        self.residual = residual
        super().__init__(message)


class NotClosed(SigmaError):
    """A bracket (or a sigma image) leaves span{e, h, f}; ``witness`` is its coefficient."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message}: coefficient {witness}")


class BudgetExhausted(SigmaError):
    """Rewriting hit its step budget; the system may not terminate."""


class PreconditionError(SigmaError, ValueError):
    """Caller violated a documented precondition."""


class ConfigError(SigmaError):
    """Invalid run configuration (bad keys, undeclared parameters, ...)."""
