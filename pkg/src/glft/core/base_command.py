"""
Base command class for standardized glft verbs.

Every verb (conjugate, deform, diamond, verify, divergence, plotdata)
inherits from CliCommand so that argument parsing, error reporting and
exit codes behave the same everywhere.

Usage Example:
    ```python
    from glft.core import CliCommand

    class EchoCommand(CliCommand):
        name = "echo"

        def get_description(self) -> str:
            return "Print a catalog function's value"

        def setup_arguments(self) -> None:
            self.parser.add_argument('--fn', required=True, help='Function spec')
            self.parser.add_argument('--at', type=float, default=0.0)

        def execute(self, args: argparse.Namespace) -> int:
            print(lookup_spec(args.fn).value([args.at]))
            return 0

    def main():
        return EchoCommand().run()
    ```

Exit Codes:
    0: Success / verification passed
    1: Verification failed or inconclusive
    2: Usage or configuration error
    3: Numeric failure
    130: Cancelled (KeyboardInterrupt)
"""

import argparse
import re
import sys
from abc import ABC, abstractmethod
from typing import List, Optional

from glft.utils.error_handling import report_error
from glft.utils.exceptions import GlftError

# Option values such as -3:3:601 or -0.5,1
NEGATIVE_VALUE = re.compile(r"^-[\d.]")


class CliCommand(ABC):
    """
    Abstract base class for glft verbs.

    Subclasses must implement:
        - get_description(): Return the command description for --help
        - setup_arguments(): Configure argparse arguments
        - execute(args): Implement the command logic and return an exit code

    Attributes:
        name (str): Verb name used by the dispatcher
        parser (argparse.ArgumentParser): The argument parser instance
    """

    name: str = "command"

    def __init__(self):
        """Initialize the command with an argument parser."""
        self.parser = argparse.ArgumentParser(
            prog=f"glft {self.name}",
            description=self.get_description(),
            epilog=self.get_epilog(),
            formatter_class=argparse.RawDescriptionHelpFormatter
        )
        self.setup_arguments()

    @abstractmethod
    def get_description(self) -> str:
        """Return the command description for help text."""

    def get_epilog(self) -> Optional[str]:
        """Examples shown after the argument list."""
        return None

    @abstractmethod
    def setup_arguments(self) -> None:
        """Configure argparse arguments for this command."""

    @abstractmethod
    def execute(self, args: argparse.Namespace) -> int:
        """
        Execute the command with parsed arguments.

        Returns:
            int: Exit code (0 for success, non-zero for failure)
        """

    def parse_input(self, args: Optional[List[str]] = None) -> argparse.Namespace:
        """Parse command-line arguments (sys.argv[1:] when args is None)."""
        if args is None:
            args = sys.argv[1:]
        return self.parser.parse_args(self.attach_negative_values(args))

    def attach_negative_values(self, args: List[str]) -> List[str]:
        """
        Rewrite `--opt -3:3:601` as `--opt=-3:3:601`.

        argparse only accepts a leading '-' in a value when it looks like a
        plain negative number; grids and vectors such as `-1:1:5` or
        `-0.5,1` need the joined form.
        """
        takes_value = {
            option
            for action in self.parser._actions
            if action.option_strings and action.nargs is None
            for option in action.option_strings
        }
        joined: List[str] = []
        i = 0
        while i < len(args):
            token = args[i]
            if (token in takes_value and i + 1 < len(args)
                    and NEGATIVE_VALUE.match(args[i + 1])):
                joined.append(f"{token}={args[i + 1]}")
                i += 2
                continue
            joined.append(token)
            i += 1
        return joined


    def run(self, args: Optional[List[str]] = None) -> int:
        """
        Main entry point with standardized error handling.

        glft errors are reported on stderr (a colored line and a JSON
        object) and mapped to their exit code; anything unexpected is a
        numeric failure.

        Example:
            ```python
            def test_command():
                assert DiamondCommand().run(['--P', literal]) == 0
            ```
        """
        try:
            parsed = self.parse_input(args)
            return self.execute(parsed)
        except KeyboardInterrupt:
            print("\nOperation cancelled.", file=sys.stderr)
            return 130
        except SystemExit as e:
            # argparse exits 2 on bad usage and 0 on --help
            return e.code if isinstance(e.code, int) else 2
        except GlftError as e:
            report_error(e, e.exit_code)
            return e.exit_code
        except Exception as e:
            report_error(e, 3)
            return 3
