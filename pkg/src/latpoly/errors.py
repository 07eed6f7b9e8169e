"""Exception types shared by all latpoly modules."""

from __future__ import annotations


class LatPolyError(Exception):
    """Base class for all latpoly errors."""


class TruncationInsufficient(LatPolyError):
    """A truncated series was asked for a coefficient beyond its trusted order."""


class NonUnitLeadingCoefficient(LatPolyError):
    """Series inversion needs the lowest coefficient to be a nonzero rational.

    If the lowest coefficient has zero rational part (or carries symbols),
    the expansion around the origin is not a formal series with polynomial
    coefficients, so inversion is refused rather than guessed at.
    """


class NonInvertibleSubstitution(LatPolyError):
    """A negative exponent met a binding that is not an invertible monomial."""


class ZeroLambda(LatPolyError):
    """A down-step weight that must be nonzero was zero."""


class NearBranchPoint(LatPolyError):
    """Floating-point closed-form evaluation too close to x*x == 4."""


class SizeLimit(LatPolyError):
    """An enumeration would exceed its configured cap."""


class CutOutOfRange(LatPolyError):
    """Edge or vertex cut position outside the valid range."""


class InsufficientWeights(LatPolyError):
    """Fewer down-step weights supplied than the formula consumes."""


class IndexOutOfRange(LatPolyError):
    """Stratum index outside the defined range."""


class SchemaError(LatPolyError):
    """A JSON document does not match the weights schema.

    Carries a JSON-pointer style path to the offending field.
    """

    def __init__(self, pointer: str, message: str):
        self.pointer = pointer
        self.message = message
        super().__init__(f"{pointer}: {message}")
