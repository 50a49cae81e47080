"""
Exception hierarchy for the package

Every error carries an optional `field` naming the offending input. The CLI maps the
three families to exit codes: `ConfigError` (2), `DomainError` (3), `NumericalError` (4).
"""

from typing import ClassVar


class ChiralWalkError(Exception):
    """
    Base class of all errors raised by the package
    """

    exit_code: ClassVar[int] = 1

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field

    def __str__(self) -> str:
        message = super().__str__()
        return f"{self.field}: {message}" if self.field else message


class ConfigError(ChiralWalkError, ValueError):
    exit_code: ClassVar[int] = 2


class DomainError(ChiralWalkError, ValueError):
    exit_code: ClassVar[int] = 3


class NumericalError(ChiralWalkError, ArithmeticError):
    exit_code: ClassVar[int] = 4


# ------------------ graph-core ------------------
class DuplicateEdge(DomainError): ...


class SelfLoop(DomainError): ...


class IndexOutOfRange(DomainError): ...


class InvalidGraph(DomainError): ...


class InvalidParams(DomainError): ...


class InvalidBranchIndex(DomainError): ...


class InvalidDecomposition(DomainError): ...


# ------------------ chiral ------------------
class PhaseOnNonEdge(DomainError): ...


class DuplicatePhase(DomainError): ...


class SingleBranch(DomainError): ...


# ------------------ dynamics ------------------
class DimensionMismatch(DomainError): ...


class InvalidState(DomainError): ...


class InvalidTimeGrid(DomainError): ...


class ConvergenceDomain(DomainError): ...


class InvalidOmega(DomainError): ...


class TooLarge(DomainError): ...


class DecompositionFailure(NumericalError): ...


class IntegrationFailure(NumericalError): ...


# ------------------ estimation ------------------
class NonMonotoneRange(DomainError): ...


class NonMonotoneTable(DomainError): ...


class DegenerateTrials(DomainError): ...


class InvalidObservation(DomainError): ...
