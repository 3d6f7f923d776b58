"""Exception types shared across the package."""

from __future__ import annotations

import enum


class DiffRatioError(Exception):
    """Base class for all errors raised by this package."""


class DomainMismatch(DiffRatioError):
    """Two sequences were combined but their index intervals differ."""


class DomainTooShort(DiffRatioError):
    """The operation needs a longer index interval than the one given."""


class DomainNotAtZero(DiffRatioError):
    """The operation requires the domain to start at index 0."""


class MixedMode(DiffRatioError):
    """Exact and floating scalars were mixed; coercion is never silent."""


class ExactModeRequired(DiffRatioError):
    """The check is only meaningful with exact rational scalars."""


class DivisorVanishes(DiffRatioError):
    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"divisor vanishes at index {index}")


class SignViolationKind(enum.Enum):
    SEQ_VANISHES = "seq_vanishes"
    SEQ_CHANGES_SIGN = "seq_changes_sign"
    DELTA_VANISHES = "delta_vanishes"
    DELTA_CHANGES_SIGN = "delta_changes_sign"


class SignViolation(DiffRatioError):
    """A sequence or its difference vanishes or changes sign where a
    constant nonzero sign is required."""

    def __init__(self, kind: SignViolationKind, index: int):
        self.kind = kind
        self.index = index
        super().__init__(f"{kind.value} at index {index}")


class HypothesisFailed(DiffRatioError):
    """Inputs do not satisfy the hypotheses of the rule being checked.

    This signals non-applicability, not a counterexample.
    """

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class PatternMismatch(DiffRatioError):
    """The sequence does not have the claimed pattern."""


class HorizonTooSmall(DiffRatioError):
    """The truncation horizon leaves too few usable points."""


class NoDominationCertificate(DiffRatioError):
    """Tail truncation was requested without a valid geometric domination
    certificate, so no remainder bound can be computed."""


class NonPositive(DiffRatioError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"value at index {index} is not strictly positive")


class ToleranceAmbiguity(DiffRatioError):
    """A strict comparison fell inside the noise band of the working
    precision; neither outcome can be certified."""
