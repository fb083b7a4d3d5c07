"""Exception hierarchy shared by every module."""

from __future__ import annotations


class RedhefferError(Exception):
    """Base class for all library errors."""


class InvalidOrder(RedhefferError, ValueError):
    pass


class InvalidTolerance(RedhefferError, ValueError):
    pass


class NonConvergence(RedhefferError, ArithmeticError):
    pass


class OutOfDomain(RedhefferError, ValueError):
    pass


class TailBoundFailure(RedhefferError, ArithmeticError):
    pass


class NearPole(RedhefferError, ArithmeticError):
    pass


class SignCertificationFailure(RedhefferError, ArithmeticError):
    pass


class MeshRefinementExhausted(RedhefferError, ArithmeticError):
    pass


class OrderMismatch(RedhefferError, ValueError):
    pass


class DegenerateDifference(RedhefferError, ArithmeticError):
    pass


class CacheTooSmall(RedhefferError, ValueError):
    pass


class MissingParameter(RedhefferError, ValueError):
    pass


class InequalityViolation(RedhefferError, AssertionError):
    """A property that the mathematics guarantees failed numerically."""
