"""
glft conjugate - tabulate the Legendre-Fenchel conjugate of a function.

Usage:
    glft conjugate --fn exp --grid -3:3:601 --engine grid-fast --out conj.csv
    glft conjugate --fn power-norm{p=3} --grid -2:2:41
    glft conjugate --from-grid samples.csv --dual -4:4:81 --format json

Grid engines sample the function on --grid and take the discrete sup; the
dual nodes default to the range of slopes seen on the grid. The closed and
newton engines evaluate L F pointwise on --dual (default: --grid).
"""
import argparse
from typing import Dict, Optional

import numpy as np

from glft.commands.common import (
    add_engine_argument,
    add_output_arguments,
    grid_arrays,
    tabulate_conjugate,
)
from glft.core.base_command import CliCommand
from glft.funcspace.catalog import lookup_spec
from glft.funcspace.grid import GridFunction, sample_on
from glft.legendre.grid_transform import conjugate_grid, slope_axes
from glft.utils.exceptions import UsageError
from glft.utils.grid_io import read_grid, write_grid
from glft.utils.logging import log_info


def argmax_columns(primal: GridFunction, conj: GridFunction) -> Dict[str, np.ndarray]:
    """Maximising primal node for each dual node, one column per axis."""
    if conj.argmax is None:
        return {}
    nodes = primal.nodes()[conj.argmax.ravel()]
    if primal.dim == 1:
        return {'argmax_theta': nodes[:, 0]}
    return {f'argmax_theta{k}': nodes[:, k] for k in range(primal.dim)}


class ConjugateCommand(CliCommand):
    name = "conjugate"

    def get_description(self) -> str:
        return "Tabulate the Legendre-Fenchel conjugate of a catalog function or sampled grid"

    def get_epilog(self) -> Optional[str]:
        return '''
Examples:
  glft conjugate --fn exp --grid -3:3:601 --engine grid-fast --out conj.csv
  glft conjugate --fn quadratic-form{m=2} --grid -2:2:21,-2:2:21 --engine newton
  glft conjugate --from-grid samples.csv --dual -4:4:81 --format json
        '''

    def setup_arguments(self) -> None:
        source = self.parser.add_mutually_exclusive_group(required=True)
        source.add_argument(
            '--fn',
            metavar='SPEC',
            help='Catalog function, e.g. exp, power-norm{p=3}, quadratic-form{m=2}'
        )
        source.add_argument(
            '--from-grid',
            metavar='PATH',
            help='Conjugate samples read from a CSV/JSON grid file'
        )
        self.parser.add_argument(
            '--grid',
            metavar='LO:HI:N[,LO:HI:N]',
            help='Primal grid (required with --fn)'
        )
        self.parser.add_argument(
            '--dual',
            metavar='LO:HI:N[,LO:HI:N]',
            help='Dual grid (default: slope range for grid engines, else --grid)'
        )
        add_engine_argument(self.parser, default=None,
                            help_text='Conjugation engine (default: closed, grid-fast with --from-grid)')
        add_output_arguments(self.parser)

    def _from_samples(self, primal: GridFunction, engine: str, dual_text: Optional[str]) -> GridFunction:
        if not engine.startswith('grid-'):
            raise UsageError(f"sampled input needs a grid engine, not '{engine}'")
        dual = grid_arrays(dual_text, primal.dim) if dual_text else slope_axes(primal)
        log_info(f"discrete transform ({engine}) of {primal.label}: "
                 f"{primal.values.size} primal x {int(np.prod([a.size for a in dual]))} dual nodes")
        return conjugate_grid(primal, dual, fast=(engine == 'grid-fast'))

    def execute(self, args: argparse.Namespace) -> int:
        if args.from_grid:
            primal = read_grid(args.from_grid)
            conj = self._from_samples(primal, args.engine or 'grid-fast', args.dual)
            write_grid(conj, args.out, args.format, extra=argmax_columns(primal, conj))
            return 0

        if not args.grid:
            raise UsageError("--grid is required with --fn")
        f = lookup_spec(args.fn)
        arrays = grid_arrays(args.grid, f.dim)
        engine = args.engine or 'closed'
        if engine.startswith('grid-'):
            primal = sample_on(f, arrays)
            conj = self._from_samples(primal, engine, args.dual)
            write_grid(conj, args.out, args.format, extra=argmax_columns(primal, conj))
            return 0

        dual = grid_arrays(args.dual, f.dim) if args.dual else arrays
        conj = tabulate_conjugate(f, engine, dual)
        write_grid(conj, args.out, args.format)
        return 0


def main():
    return ConjugateCommand().run()


if __name__ == '__main__':
    raise SystemExit(main())
