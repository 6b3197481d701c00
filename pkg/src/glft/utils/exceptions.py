"""Custom exceptions for glft.

Provides a hierarchy of exceptions for consistent error handling.
Each class carries the process exit code the CLI reports for it.
"""


class GlftError(Exception):
    """Base exception for glft.

    All custom exceptions should inherit from this class.
    """
    exit_code = 1


class UsageError(GlftError):
    """Invalid command-line usage (unknown flag values, malformed literals)."""
    exit_code = 2


class ConfigError(GlftError):
    """Error in configuration.

    Raised when configuration is missing, invalid, or cannot be loaded.
    """
    exit_code = 2


class FileOperationError(GlftError):
    """Error in file operations.

    Raised when grid or report files cannot be read or written.
    """
    exit_code = 2


class NumericError(GlftError):
    """Base class for numeric failures (exit code 3)."""
    exit_code = 3


class ExtendedArithmeticError(NumericError):
    """Undefined extended-real operation, e.g. +inf + (-inf)."""


class DimensionError(NumericError):
    """Point or parameter dimension does not match the function."""


class DomainError(NumericError):
    """A point or finite-difference stencil leaves the effective domain."""


class ParameterError(NumericError):
    """Invalid catalog or deformation parameters (p < 1, singular A, ...)."""


class CatalogError(ParameterError):
    """Unknown catalog entry; reported as a usage error."""
    exit_code = 2


class EngineError(NumericError):
    """A conjugation engine could not evaluate the transform."""


class NoClosedFormError(EngineError):
    """No closed-form conjugate rule exists for the function."""


class ConvergenceError(EngineError):
    """Iterative solver did not converge within its budget."""


class OutOfRangeError(EngineError):
    """Target lies outside the gradient range; iterates diverged."""


class HessianNotSPDError(EngineError):
    """Hessian lost positive definiteness at an iterate."""


class GridWindowError(EngineError):
    """Discrete sup attained on a window edge that is not a domain edge."""
