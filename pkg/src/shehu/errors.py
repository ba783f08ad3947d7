"""Exception hierarchy shared by the library, the service, and the CLI.

Every error the CLI can surface carries a process exit code; the service
reports the class name as a machine-readable ``kind`` so remote clients can
map failures to the same codes.
"""

from __future__ import annotations


class ShehuError(Exception):
    """Base class for all domain errors raised by this package."""

    exit_code = 1


class ExpressionParseError(ShehuError):
    """Raised when expression text does not match the grammar."""

    exit_code = 2

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class ImageParseError(ShehuError):
    """Raised when image text is not a valid homogeneous rational in s and u."""

    exit_code = 2

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class ConfigError(ShehuError):
    """Raised for a malformed or inconsistent problem configuration."""

    exit_code = 2


class DivergenceError(ShehuError):
    """Raised when the transform integral diverges for the requested point."""

    exit_code = 3


class OutsideGrammarError(ShehuError):
    """Raised when an expression falls outside the closed-form table's reach."""

    exit_code = 4


class ImproperImageError(ShehuError):
    """Raised when a rational image is not strictly proper."""

    exit_code = 5


class SolverError(ShehuError):
    """Raised when a solver rejects its problem data."""

    exit_code = 6


class UnboundVariableError(ShehuError):
    """Raised when evaluating an expression without a needed variable binding."""


class DomainError(ShehuError, ValueError):
    """Raised for scalar function arguments outside the supported domain."""


class QuadratureError(ShehuError):
    """Raised when adaptive quadrature cannot meet the requested tolerance."""


class RootFindingError(ShehuError):
    """Raised when denominator roots cannot be resolved reliably."""


class PoleSeparationError(RootFindingError):
    """Raised when distinct poles are too close to separate numerically."""


#: Classes a remote client may need to reconstruct from a service error kind.
ERROR_KINDS: dict[str, type[ShehuError]] = {
    cls.__name__: cls
    for cls in (
        ShehuError,
        ExpressionParseError,
        ImageParseError,
        ConfigError,
        DivergenceError,
        OutsideGrammarError,
        ImproperImageError,
        SolverError,
        UnboundVariableError,
        DomainError,
        QuadratureError,
        RootFindingError,
        PoleSeparationError,
    )
}
