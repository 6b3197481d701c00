"""
glft deform - sample the affine deformation F_P of a catalog function.

Usage:
    glft deform --fn exp --P '{"lambda":2,"A":[[2]],"b":[1],"c":[3],"d":5}' --grid -3:3:61
"""
import argparse
from typing import Optional

from glft.commands.common import add_fn_argument, add_output_arguments, grid_arrays, load_params
from glft.core.base_command import CliCommand
from glft.deform.deformation import deform
from glft.funcspace.catalog import lookup_spec
from glft.funcspace.grid import sample_on
from glft.utils.exceptions import UsageError
from glft.utils.grid_io import write_grid
from glft.utils.logging import log_debug


class DeformCommand(CliCommand):
    name = "deform"

    def get_description(self) -> str:
        return "Sample F_P(theta) = lambda F(A theta + b) + <c, theta> + d on a grid"

    def get_epilog(self) -> Optional[str]:
        return '''
Examples:
  glft deform --fn exp --P '{"lambda":2,"A":[[2]],"b":[1],"c":[3],"d":5}' --grid -3:3:61
  glft deform --fn quadratic-form{m=2} --P @params.json --grid -1:1:11,-1:1:11 --format json
        '''

    def setup_arguments(self) -> None:
        add_fn_argument(self.parser)
        self.parser.add_argument(
            '--P',
            dest='params',
            required=True,
            metavar='JSON',
            help='Deformation literal {"lambda","A","b","c","d"}, or @file.json'
        )
        self.parser.add_argument(
            '--grid',
            required=True,
            metavar='LO:HI:N[,LO:HI:N]',
            help='Grid to sample the deformed function on'
        )
        add_output_arguments(self.parser)

    def execute(self, args: argparse.Namespace) -> int:
        f = lookup_spec(args.fn)
        P = load_params(args.params)
        if P.dim != f.dim:
            raise UsageError(f"P is {P.dim}-D but {f.label} is {f.dim}-D")
        deformed = deform(f, P)
        log_debug(f"deformed function: {deformed.label}")
        write_grid(sample_on(deformed, grid_arrays(args.grid, f.dim)), args.out, args.format)
        return 0


def main():
    return DeformCommand().run()


if __name__ == '__main__':
    raise SystemExit(main())
