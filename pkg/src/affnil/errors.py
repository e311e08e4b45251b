"""Exception hierarchy shared by all modules.

Every failure mode has its own class so callers (and the CLI exit-code
mapping) can react precisely.  ``PrecisionExhausted`` is the honest "I cannot
decide this at the current truncation" signal: operations raise it instead of
guessing whenever a zero test or pivot choice is undetermined.
"""

from __future__ import annotations


class AffnilError(Exception):
    """Base class for all library errors."""


class PrecisionExhausted(AffnilError):
    """A result or decision is undetermined at the available truncation."""


class ZeroHasNoOrder(AffnilError):
    """The valuation of the exact zero element was requested."""


class DivisionByZero(AffnilError, ZeroDivisionError):
    """Inverse of the exact zero element."""


class NoRoot(AffnilError):
    """The valuation is not divisible by n, so no n-th root exists."""


class RootNotRepresentable(AffnilError):
    """An n-th root exists but its leading coefficient lies outside Q(i)."""


class ZeroScale(AffnilError, ValueError):
    """t -> z*t substitution with z = 0."""


class DimensionMismatch(AffnilError, ValueError):
    """Matrix or element sizes do not agree."""


class Singular(AffnilError):
    """Matrix inverse of a singular matrix."""


class NotNilpotent(AffnilError):
    """An operation requiring a nilpotent element received something else."""


class NotTraceless(AffnilError, ValueError):
    """Matrix component with definitely nonzero trace."""


class NotUnimodular(AffnilError, ValueError):
    """Group-element matrix whose determinant admits no n-th power certificate."""


class InvalidShift(AffnilError, ValueError):
    """Shift k outside [0, smallest part)."""


class InvalidPartition(AffnilError, ValueError):
    """Sequence is not a non-increasing partition of the expected size."""


class ShapeMismatch(AffnilError, ValueError):
    """Quasi-Jordan forms with different block structures."""


class NotConjugate(AffnilError):
    """Conjugator requested between forms in different orbits."""


class CertifiedDetWithDerivation(AffnilError):
    """Adjoint action with nonzero derivation part needs an exact det-1 matrix."""


class ExactDivisionError(AffnilError):
    """Internal: an exact polynomial division left a remainder."""


class LaurentSyntaxError(AffnilError, ValueError):
    """Malformed Laurent literal; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
