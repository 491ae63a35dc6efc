"""Exception types shared across the package."""

from __future__ import annotations


class PairGraphError(Exception):
    """Base class for domain errors raised by this package."""


class UnrealizableError(PairGraphError):
    """The requested target state admits no pair-source graph.

    Raised for targets that are impossible in principle (not merely
    unsupported), e.g. high-dimensional GHZ targets beyond the unique
    four-vertex three-dimensional graph.
    """

    def __init__(self, message: str, verdict: object | None = None) -> None:
        super().__init__(message)
        self.verdict = verdict


class WeightSolveError(PairGraphError):
    """No acceptable weight assignment was found within the restart budget."""

    def __init__(self, message: str, residual: float | None = None) -> None:
        super().__init__(message)
        self.residual = residual


class VerificationError(PairGraphError):
    """A constructed graph failed its own re-simulation checks."""


class DocumentError(PairGraphError, ValueError):
    """A graph document is malformed; the message names the offending field."""
