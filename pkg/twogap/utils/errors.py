"""Exception hierarchy shared across the package."""
from __future__ import annotations

from typing import Any, Dict, Optional, Sequence


class TwoGapError(RuntimeError):
    """Base class for all package errors."""


class InvalidInputError(TwoGapError, ValueError):
    """Raised for invalid domains or parameters."""


class DomainError(InvalidInputError):
    """Raised when a point lies outside an operation's domain."""


class PoleError(DomainError):
    """Raised when a Green function is evaluated at its pole."""


class ConvergenceError(TwoGapError):
    """Raised when a numerical procedure fails to converge."""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.diagnostics: Dict[str, Any] = dict(diagnostics or {})


class QuadratureError(ConvergenceError):
    """Raised when node doubling does not reach the requested tolerance."""

    def __init__(self, message: str, estimates: Sequence[float]) -> None:
        super().__init__(message, {"estimates": list(estimates)})
        self.estimates = tuple(estimates)


class RemezConvergenceError(ConvergenceError):
    """Raised when the exchange stagnates; carries the last bracket."""

    def __init__(self, message: str, bracket: Sequence[Any]) -> None:
        super().__init__(message, {"bracket": [str(value) for value in bracket]})
        self.bracket = tuple(bracket)


class InsufficientPrecisionError(ConvergenceError):
    """Raised when alternation is lost in the levelled solve."""


class ZeroCountError(ConvergenceError):
    """Raised when a zero count stays ambiguous after refinement."""


class OrientationError(ConvergenceError):
    """Raised when the theta route and the ring route disagree."""


class GridReferenceError(ConvergenceError):
    """Raised when the grid min-max reference fails."""


class AlternationError(TwoGapError):
    """Raised when an equioscillation certificate fails a named check."""

    def __init__(self, check: str, message: str) -> None:
        super().__init__(f"{check}: {message}")
        self.check = check


class ClassificationError(TwoGapError):
    """Raised when alternation counts match none of the cases a/b/c."""


class PredictionError(TwoGapError):
    """Raised when a prediction variant cannot be produced."""
