# pcenters/errors.py
"""Exception hierarchy.

Everything raised on purpose derives from ``PotentialCentersError``.
Precondition failures are ``ValidationError`` (CLI exit 2); numerical
failures are ``NumericalError`` (CLI exit 3).
"""

from __future__ import annotations


class PotentialCentersError(Exception):
    """Base class; ``field`` names the parameter or precondition at fault."""

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        if field and field not in message:
            message = f"{field}: {message}"
        super().__init__(message)


class ValidationError(PotentialCentersError, ValueError):
    pass


class NumericalError(PotentialCentersError, RuntimeError):
    pass


# --- precondition failures ---

class InvalidShape(ValidationError):
    pass


class ConfigError(ValidationError):
    pass


class NegativeRadius(ValidationError):
    pass


class AlphaOutOfRange(ValidationError):
    pass


class NonpositiveHeight(ValidationError):
    pass


class NonpositiveTime(ValidationError):
    pass


class NonUnitDirection(ValidationError):
    pass


class InvalidRange(ValidationError):
    pass


class UnsupportedDimension(ValidationError):
    pass


class HypothesisViolated(ValidationError):
    pass


class NonDecreasingParameters(ValidationError):
    pass


class EmptySet(ValidationError):
    pass


class BoundaryPoint(ValidationError):
    pass


class SingularKernel(ValidationError):
    pass


class PreconditionFailed(ValidationError):
    pass


class NoSamplePoints(ValidationError):
    pass


class EmptyAdmissibleRegion(ValidationError):
    pass


# --- numerical failures ---

class BracketingFailed(NumericalError):
    pass


class EmptyRegion(NumericalError):
    pass


class ConeValidationFailed(NumericalError):
    pass
