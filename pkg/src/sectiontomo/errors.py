"""Exception types shared across the package.

The CLI maps :class:`AccuracyError` to exit status 2 and every other
:class:`SectionTomoError` to exit status 1.
"""

from __future__ import annotations


class SectionTomoError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(SectionTomoError, ValueError):
    """An argument violates a documented precondition."""


class DomainError(SectionTomoError, ValueError):
    """A value lies outside the domain of a function (e.g. a pole)."""

    def __init__(self, message: str, pole: int | None = None):
        super().__init__(message)
        self.pole = pole


class PoleError(DomainError):
    """The requested exponent hits a pole of the transform."""


class RedirectError(DomainError):
    """The request must be served by a different method."""

    def __init__(self, message: str, method: str):
        super().__init__(message)
        self.method = method


class UnsupportedError(SectionTomoError):
    """The operation is not defensible for this body or order."""


class AccuracyError(SectionTomoError):
    """Quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, value: float = float("nan"), err_est: float = float("inf")):
        super().__init__(message)
        self.value = value
        self.err_est = err_est


class InconsistencyError(SectionTomoError):
    """Two routes that must agree did not; indicates a bug."""


class ConfigError(SectionTomoError):
    """A body or run configuration could not be parsed."""

    def __init__(self, message: str, key: str | None = None):
        super().__init__(message)
        self.key = key
