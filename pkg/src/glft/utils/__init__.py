"""Utility modules for glft."""

from glft.utils.logging import (
    log_info,
    log_success,
    log_warning,
    log_error,
    log_debug,
    set_verbose,
    RED,
    GREEN,
    YELLOW,
    BLUE,
    CYAN,
    NC,
)
from glft.utils.exceptions import (
    GlftError,
    UsageError,
    ConfigError,
    FileOperationError,
    NumericError,
)
from glft.utils.error_handling import error_payload, report_error

__all__ = [
    # Logging
    'log_info',
    'log_success',
    'log_warning',
    'log_error',
    'log_debug',
    'set_verbose',
    'RED',
    'GREEN',
    'YELLOW',
    'BLUE',
    'CYAN',
    'NC',
    # Exceptions
    'GlftError',
    'UsageError',
    'ConfigError',
    'FileOperationError',
    'NumericError',
    # Error handling
    'error_payload',
    'report_error',
]
