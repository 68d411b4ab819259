"""Exception hierarchy shared by the jumped Wenger toolkit."""

from __future__ import annotations


class JumpedWengerError(RuntimeError):
    """Base class for every error raised by the library."""


class ConfigError(JumpedWengerError):
    """Raised when a grid/limits configuration file is missing or invalid."""


# Field construction and arithmetic.


class NotPrimeError(JumpedWengerError, ValueError):
    """Raised when a characteristic (or a field order) is not a prime (power)."""


class ReducibleModulusError(JumpedWengerError, ValueError):
    """Raised when a supplied modulus is reducible over GF(p)."""


class DegreeMismatchError(JumpedWengerError, ValueError):
    """Raised when a modulus is not monic of the requested degree."""


class FieldDivisionByZero(JumpedWengerError, ZeroDivisionError):
    """Raised when inverting the zero element."""


class EvenCharacteristicError(JumpedWengerError, ValueError):
    """Raised by quadratic-character helpers that need odd q."""


# Linear algebra and symmetric functions.


class NonSquareError(JumpedWengerError, ValueError):
    """Raised when an operation needs a square matrix."""


class SingularMatrixError(JumpedWengerError, ArithmeticError):
    """Raised when a unique solve meets a singular system."""


class NonSquareProfileError(JumpedWengerError, ValueError):
    """Raised when the closed-form determinant is asked for a non-square profile."""


class SearchExhaustedError(JumpedWengerError, LookupError):
    """Raised when no tuple satisfies a sigma non-vanishing search."""


# Graphs and witnesses.


class BadJumpIndicesError(JumpedWengerError, ValueError):
    """Raised when (i, j) violates 1 <= i < j <= m+2, or exponents are malformed."""


class WrongSideError(JumpedWengerError, ValueError):
    """Raised when a vertex of the wrong side is passed."""


class SameSideError(JumpedWengerError, ValueError):
    """Raised when an edge test receives two vertices of the same side."""


class PreconditionViolatedError(JumpedWengerError, ValueError):
    """Raised when a construction is requested outside its guaranteed range."""


class InternalInconsistencyError(JumpedWengerError, AssertionError):
    """Raised when a constructed object fails its own validation."""


class NotJumpedOriginError(JumpedWengerError, ValueError):
    """Raised when a theorem lookup is asked for a custom exponent list."""


class InvalidGridError(JumpedWengerError, ValueError):
    """Raised when a grid expression or grid file cannot be used."""


__all__ = [
    "JumpedWengerError",
    "ConfigError",
    "NotPrimeError",
    "ReducibleModulusError",
    "DegreeMismatchError",
    "FieldDivisionByZero",
    "EvenCharacteristicError",
    "NonSquareError",
    "SingularMatrixError",
    "NonSquareProfileError",
    "SearchExhaustedError",
    "BadJumpIndicesError",
    "WrongSideError",
    "SameSideError",
    "PreconditionViolatedError",
    "InternalInconsistencyError",
    "NotJumpedOriginError",
    "InvalidGridError",
]
