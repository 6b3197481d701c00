"""
glft - generalized Legendre-Fenchel transform toolkit.

Usage:
    glft [--config PATH] [-v] [--tol NAME=VALUE ...] <verb> [verb options]

Verbs:
    conjugate    Tabulate L F on a dual grid (closed, newton, grid-brute, grid-fast)
    deform       Sample F_P on a grid
    diamond      Print the dual deformation parameters of P
    verify       Run a verification suite (exit 0 pass, 1 fail/inconclusive)
    divergence   Bregman and Fenchel-Young readings of one divergence
    plotdata     Function / conjugate / subgradient columns for plotting

Global options must come before the verb.
"""
import argparse
import sys
from typing import Dict, List, Optional, Type

from glft import __version__
from glft.commands.conjugate import ConjugateCommand
from glft.commands.deform import DeformCommand
from glft.commands.diamond import DiamondCommand
from glft.commands.divergence import DivergenceCommand
from glft.commands.plotdata import PlotDataCommand
from glft.commands.verify import VerifyCommand
from glft.core.base_command import CliCommand
from glft.core.config import get_config
from glft.funcspace.catalog import catalog_names
from glft.utils.error_handling import report_error
from glft.utils.exceptions import GlftError, UsageError
from glft.utils.logging import log_debug, set_verbose

COMMANDS: Dict[str, Type[CliCommand]] = {
    command.name: command
    for command in (
        ConjugateCommand,
        DeformCommand,
        DiamondCommand,
        VerifyCommand,
        DivergenceCommand,
        PlotDataCommand,
    )
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='glft',
        description='Generalized Legendre-Fenchel transforms: conjugates, deformations, '
                    'divergences and their numeric verification',
        epilog='''
Examples:
  glft conjugate --fn exp --grid -3:3:601 --engine grid-fast --out conj.csv
  glft diamond --P '{"lambda":2,"A":[[2]],"b":[1],"c":[3],"d":5}'
  glft --tol theorem_newton=1e-7 verify theorem --engine newton --P-random 10
  glft -v verify oracle --size 1000000

Run 'glft <verb> --help' for the options of a verb.
        ''',
        formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument(
        '--version',
        action='version',
        version=f'%(prog)s {__version__}'
    )
    parser.add_argument(
        '--config',
        metavar='PATH',
        help='Config file (default: $GLFT_CONFIG, then ~/.glft/config.json)'
    )
    parser.add_argument(
        '-v', '--verbose',
        action='store_true',
        help='Debug output on stderr'
    )
    parser.add_argument(
        '--tol',
        action='append',
        default=[],
        metavar='NAME=VALUE',
        help='Override a named tolerance for this run (repeatable)'
    )
    parser.add_argument(
        '--list-functions',
        action='store_true',
        help='List the catalog function names and exit'
    )
    parser.add_argument(
        'command',
        nargs='?',
        choices=list(COMMANDS),
        metavar='verb',
        help=', '.join(COMMANDS)
    )
    parser.add_argument(
        'args',
        nargs=argparse.REMAINDER,
        help=argparse.SUPPRESS
    )
    return parser


def parse_tolerance(text: str) -> tuple:
    name, sep, value = text.partition('=')
    if not sep or not name.strip():
        raise UsageError(f"--tol expects NAME=VALUE, got {text!r}")
    try:
        return name.strip(), float(value)
    except ValueError as e:
        raise UsageError(f"--tol {name}: not a number: {value!r}") from e


def configure(args: argparse.Namespace) -> None:
    """Apply the global options: verbosity, config file, tolerance overrides."""
    set_verbose(args.verbose)
    config = get_config()
    if args.config:
        config.use_file(args.config)
    for item in args.tol:
        name, value = parse_tolerance(item)
        config.override(f'tolerances.{name}', value)
        log_debug(f"tolerance {name} = {value!r}")


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    try:
        configure(args)
    except GlftError as e:
        report_error(e, e.exit_code)
        return e.exit_code

    if args.list_functions:
        print('\n'.join(catalog_names()))
        return 0
    if args.command is None:
        parser.print_help(sys.stderr)
        return 2
    return COMMANDS[args.command]().run(args.args)


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
