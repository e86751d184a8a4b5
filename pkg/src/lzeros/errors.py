"""Exception and warning types raised across the package."""

from __future__ import annotations


class LZerosError(Exception):
    """Base class for all package errors."""


class DomainError(LZerosError, ValueError):
    """Argument outside the domain of a function (e.g. arg of 0)."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class BranchDomainError(DomainError):
    """Argument outside the image of a requested Lambert W branch."""


class SeedDomainError(DomainError):
    """Closed-form seed undefined for this label (Lambert W argument below -1/e)."""


class ZeroModulusError(LZerosError, ArithmeticError):
    """Modulus underflowed the working precision; the point is on a zero."""


class OnZeroError(ZeroModulusError):
    """Counting height coincides with the ordinate of a zero."""


class ConvergenceError(LZerosError, ArithmeticError):
    """An iteration failed to converge."""


class PrecisionExhausted(ConvergenceError):
    """The refinement schedule ran out of iterations before the residual target."""


class NoSolution(LZerosError):
    """The transcendental equation has no solution for this label.

    ``jump`` is the size of the left-hand-side discontinuity (in units of pi)
    found inside the bracket and ``location`` its ordinate.
    """

    def __init__(self, message: str, n: int | None = None, jump=None, location=None):
        super().__init__(message)
        self.n = n
        self.jump = jump
        self.location = location


class InsufficientData(LZerosError, ValueError):
    """Too few zeros for a meaningful statistic."""


class ResourceError(LZerosError):
    """Request exceeds a documented desk-scale cap."""


class InternalError(LZerosError, AssertionError):
    """Two independent internal checks disagree."""


class BranchWindowWarning(RuntimeWarning):
    """Admissible saddle points reach the edge of the branch window."""


class MultiRootWarning(RuntimeWarning):
    """More than one sign change of the equation was seen inside one bracket."""
