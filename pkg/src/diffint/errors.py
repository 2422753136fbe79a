"""Exception and warning types shared across the package."""

from __future__ import annotations


class DiffintError(Exception):
    """Base class for all errors raised by this package."""


class PoleError(DiffintError, ZeroDivisionError):
    """A function was evaluated exactly at one of its poles."""


class DomainError(DiffintError, ValueError):
    """Arguments lie outside the supported domain of an operation."""


class SingularPoint(DiffintError, ArithmeticError):
    """Pointwise evaluation hit a singular point of a kernel.

    Carries the offending point and a short description of the kernel so
    table-producing callers can report per-row errors.
    """

    def __init__(self, message: str, point: complex | None = None):
        super().__init__(message)
        self.point = point


class NonConvergenceError(DiffintError, ArithmeticError):
    """An iterative computation failed to reach its tolerance.

    ``last_estimates`` holds the final pair of estimates (when available) so
    callers can still report a degraded result.
    """

    def __init__(self, message: str, last_estimates: tuple | None = None):
        super().__init__(message)
        self.last_estimates = last_estimates


class ParseError(DiffintError, ValueError):
    """Expression text could not be parsed; ``column`` is 1-based."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.column = column


class NoRuleError(DiffintError, ValueError):
    """No closed-form rule applies to the given kernel or product."""


class ContractionError(DiffintError, ArithmeticError):
    """A fixed-point scheme's contraction condition is violated."""


class SingularSystemError(DiffintError, ArithmeticError):
    """A collocation system for boundary constants is singular."""


class BoundaryContractWarning(UserWarning):
    """The integrand does not vanish at the lower integration bound."""
