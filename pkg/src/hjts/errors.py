"""Exception hierarchy shared by every module in the package.

All errors raised on purpose derive from :class:`HjtsError`, so callers can
catch the package's failures with a single except clause while still
distinguishing the classic stdlib categories (``ValueError`` for bad inputs,
``ArithmeticError`` for singular data, ``RuntimeError`` for internal trouble).
"""

from __future__ import annotations


class HjtsError(Exception):
    """Base class for every error the package raises deliberately."""


class ContractError(HjtsError, ValueError):
    """An argument violates a documented precondition (shape, dtype, range)."""


class DomainError(HjtsError, ValueError):
    """A point lies outside the mathematical domain of the requested map."""


class SingularityError(HjtsError, ArithmeticError):
    """An exactly (or numerically) singular operator blocked the computation."""


class ConvergenceError(HjtsError, RuntimeError):
    """An iterative kernel hit its sweep cap before reaching tolerance.

    The leftover off-diagonal residual is kept on the exception so callers
    can log how close the iteration got.
    """

    def __init__(self, message: str, residual: float) -> None:
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class ConsistencyError(HjtsError, RuntimeError):
    """Two independently computed quantities disagree beyond tolerance.

    Raised by verification paths when redundant routes to the same value
    (e.g. two formulas for the duality map) drift apart, which indicates a
    defect rather than a bad input.
    """
