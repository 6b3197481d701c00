"""
glft plotdata - two-curve CSV of a function and its conjugate for plotting.

Usage:
    glft plotdata --fn exp-abs --grid -2:2:401 --with-conjugate --with-subgradients
    glft plotdata --fn power-norm{p=1} --grid -1:1:201 --with-subgradients --out kink.csv

Row i holds theta_i and F(theta_i); with --with-conjugate it also holds
eta_i and F*(eta_i) from a dual grid with the same node count, and with
--with-subgradients the one-sided slopes bounding dF(theta_i).
"""
import argparse
from typing import Dict, Optional

import numpy as np

from glft.commands.common import (
    add_engine_argument,
    add_fn_argument,
    add_output_arguments,
    grid_arrays,
    tabulate_conjugate,
)
from glft.core.base_command import CliCommand
from glft.funcspace.catalog import lookup_spec
from glft.funcspace.function import ConvexFunction
from glft.funcspace.grid import GridFunction, sample_on
from glft.legendre.grid_transform import conjugate_grid
from glft.legendre.subdiff import subdiff_1d
from glft.utils.exceptions import UsageError
from glft.utils.grid_io import write_grid


def conjugate_columns(f: ConvexFunction, primal: GridFunction, engine: str,
                      dual_text: Optional[str]) -> Dict[str, np.ndarray]:
    dual = grid_arrays(dual_text, f.dim) if dual_text else primal.axes
    if tuple(a.size for a in dual) != primal.shape:
        raise UsageError("the dual grid needs the same node counts as the primal grid")
    if engine.startswith('grid-'):
        conj = conjugate_grid(primal, dual, fast=(engine == 'grid-fast'))
    else:
        conj = tabulate_conjugate(f, engine, dual)
    nodes = conj.nodes()
    columns: Dict[str, np.ndarray] = {}
    if f.dim == 1:
        columns['eta'] = nodes[:, 0]
    else:
        for k in range(f.dim):
            columns[f'eta{k}'] = nodes[:, k]
    columns['conjugate'] = conj.flat_values()
    return columns


def subgradient_columns(f: ConvexFunction, primal: GridFunction) -> Dict[str, np.ndarray]:
    if f.dim != 1:
        raise UsageError("--with-subgradients is one-dimensional only")
    intervals = [subdiff_1d(f, theta) for theta in primal.axes[0]]
    return {
        'subgrad_lower': np.array([float(s.lower) for s in intervals]),
        'subgrad_upper': np.array([float(s.upper) for s in intervals]),
    }


class PlotDataCommand(CliCommand):
    name = "plotdata"

    def get_description(self) -> str:
        return "Write a function, its conjugate and its subgradients as plot-ready columns"

    def get_epilog(self) -> Optional[str]:
        return '''
Examples:
  glft plotdata --fn exp-abs --grid -2:2:401 --with-conjugate --with-subgradients
  glft plotdata --fn exp --grid -3:3:301 --with-conjugate --dual 0.01:10:301 --out pair.csv
        '''

    def setup_arguments(self) -> None:
        add_fn_argument(self.parser)
        self.parser.add_argument(
            '--grid',
            required=True,
            metavar='LO:HI:N[,LO:HI:N]',
            help='Primal grid'
        )
        self.parser.add_argument(
            '--with-conjugate',
            action='store_true',
            help='Add eta and conjugate columns'
        )
        self.parser.add_argument(
            '--dual',
            metavar='LO:HI:N[,LO:HI:N]',
            help='Dual grid for the conjugate curve (default: --grid)'
        )
        self.parser.add_argument(
            '--with-subgradients',
            action='store_true',
            help='Add subgrad_lower / subgrad_upper columns (1-D)'
        )
        add_engine_argument(self.parser)
        add_output_arguments(self.parser)

    def execute(self, args: argparse.Namespace) -> int:
        f = lookup_spec(args.fn)
        primal = sample_on(f, grid_arrays(args.grid, f.dim))
        extra: Dict[str, np.ndarray] = {}
        if args.with_conjugate:
            extra.update(conjugate_columns(f, primal, args.engine, args.dual))
        if args.with_subgradients:
            extra.update(subgradient_columns(f, primal))
        write_grid(primal, args.out, args.format, extra=extra)
        return 0


def main():
    return PlotDataCommand().run()


if __name__ == '__main__':
    raise SystemExit(main())
