"""Error reporting for glft.

Errors are reported twice: a colored line for humans and a JSON object
on stderr for scripts. CliCommand.run maps each error to its exit code.
"""
import json
import sys

from glft.utils.logging import log_error


def error_payload(exc: BaseException, exit_code: int) -> str:
    """Render the structured JSON error report for an exception."""
    return json.dumps({
        "error": type(exc).__name__,
        "message": str(exc),
        "exit_code": exit_code,
    }, sort_keys=True)


def report_error(exc: BaseException, exit_code: int) -> None:
    """Write the human line and the JSON line for an error to stderr."""
    log_error(str(exc))
    print(error_payload(exc, exit_code), file=sys.stderr)
