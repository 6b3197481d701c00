"""
glft verify - run a named verification suite and print its JSON report.

Usage:
    glft verify theorem --fn exp --P '{"lambda":2,"A":[[2]],"b":[1],"c":[3],"d":5}'
    glft verify theorem --P-random 20 --seed 7
    glft verify oracle --size 1000000
    glft verify legendre-type --fn exp-abs{restrict=positive}

Exit status is 0 when the suite passes and 1 when it fails or is
inconclusive; the report on stdout carries the worst violation and its
witness either way.
"""
import argparse
from typing import Optional

from glft.commands.common import add_engine_argument, load_params
from glft.core.base_command import CliCommand
from glft.utils.grid_io import write_artifact
from glft.utils.logging import log_error, log_success, log_warning
from glft.verification.suites import SuiteOptions, run_suite, suite_names


class VerifyCommand(CliCommand):
    name = "verify"

    def get_description(self) -> str:
        return "Run a numeric verification suite; the exit code reflects pass/fail"

    def get_epilog(self) -> Optional[str]:
        return f'''
Suites:
  {", ".join(suite_names())}

Examples:
  glft verify theorem --fn exp --P '{{"lambda":2,"A":[[2]],"b":[1],"c":[3],"d":5}}'
  glft verify theorem --engine grid-fast --P-random 5 --seed 3
  glft verify involution --dims 1,2,3
  glft verify oracle --size 1000000
  glft verify subdiff
        '''

    def setup_arguments(self) -> None:
        self.parser.add_argument(
            'suite',
            choices=suite_names(),
            help='Suite to run'
        )
        self.parser.add_argument(
            '--fn',
            action='append',
            default=[],
            metavar='SPEC',
            help='Function under test (repeatable; default: the suite\'s own list)'
        )
        params = self.parser.add_mutually_exclusive_group()
        params.add_argument(
            '--P',
            dest='params',
            metavar='JSON',
            help='Fixed deformation literal, or @file.json'
        )
        params.add_argument(
            '--P-random',
            dest='random_params',
            type=int,
            metavar='N',
            help='Number of random deformations to draw'
        )
        self.parser.add_argument(
            '--seed',
            type=int,
            help='Random seed (default: config "seed")'
        )
        add_engine_argument(self.parser)
        self.parser.add_argument(
            '--grid',
            metavar='LO:HI:N[,LO:HI:N]',
            help='Primal grid for grid-based suites'
        )
        self.parser.add_argument(
            '--samples',
            type=int,
            metavar='N',
            help='Sample count override'
        )
        self.parser.add_argument(
            '--probes',
            type=int,
            metavar='N',
            help='Dual probe count for the theorem suite'
        )
        self.parser.add_argument(
            '--dims',
            default='1,2',
            metavar='M[,M...]',
            help='Dimensions for random-parameter suites (default: 1,2)'
        )
        self.parser.add_argument(
            '--size',
            type=int,
            metavar='N',
            help='Oracle: also time a single n = k = N instance'
        )
        self.parser.add_argument(
            '--reverse',
            action='store_true',
            help='Theorem: check L(F_diamond(P)) = (L F)_P instead'
        )
        self.parser.add_argument(
            '--out',
            metavar='PATH',
            help='Also write the JSON report here (default: stdout only)'
        )

    def build_options(self, args: argparse.Namespace) -> SuiteOptions:
        try:
            dims = [int(token) for token in args.dims.split(',') if token.strip()]
        except ValueError:
            self.parser.error(f"--dims must be a comma-separated list of integers, got {args.dims!r}")
        return SuiteOptions(
            functions=list(args.fn),
            params=load_params(args.params) if args.params else None,
            random_params=args.random_params,
            seed=args.seed,
            engine=args.engine,
            grid=args.grid,
            samples=args.samples,
            probes=args.probes,
            dims=dims,
            size=args.size,
            reverse=args.reverse,
        )

    def execute(self, args: argparse.Namespace) -> int:
        report = run_suite(args.suite, self.build_options(args))
        text = report.to_json()
        write_artifact(text, None)
        if args.out:
            write_artifact(text, args.out)

        summary = (f"{args.suite}: {report.status} "
                   f"(samples={report.samples}, worst={report.worst_violation:.3e})")
        if report.status == "pass":
            log_success(summary)
        elif report.status == "fail":
            log_error(summary)
        else:
            log_warning(summary)
        return report.exit_code


def main():
    return VerifyCommand().run()


if __name__ == '__main__':
    raise SystemExit(main())
