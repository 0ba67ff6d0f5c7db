"""Exception hierarchy shared by all abeltau modules."""

from __future__ import annotations


class AbeltauError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(AbeltauError):
    """Arguments violate a documented precondition (pole of Gamma, bad invariants, ...)."""


class DomainNotSupported(DomainError):
    """The point is outside the region a formula is evaluated on.

    Deliberate refusal: the series/transformation domains are hard gates, and
    evaluation never extrapolates past them.
    """


class PoleError(DomainError):
    """Evaluation at or numerically indistinguishable from a pole."""


class CriticalPointError(DomainError):
    """A derivative that must be nonzero (denominator of a Schwarzian) vanished."""


class AccuracyError(AbeltauError):
    """A numerical routine could not certify the requested accuracy.

    Carries the best available estimate and its error bound when the routine
    produced one before giving up.
    """

    def __init__(self, message: str, estimate: complex | None = None,
                 error_bound: float | None = None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound
