"""Extended reals, domains, evaluatable convex functions and grids."""

from glft.funcspace.extended import ExtendedReal, PosInf, NegInf, format_extended, parse_extended
from glft.funcspace.domain import (
    Domain,
    Reals,
    OpenBox,
    Singleton,
    OpenBall,
    AffinePreimage,
    box,
    positive_orthant,
)
from glft.funcspace.function import (
    ConvexFunction,
    evaluate,
    grad_fd,
    hessian_fd,
    gradient_of,
    hessian_of,
)
from glft.funcspace.grid import AxisSpec, GridFunction, parse_grid_spec, sample, sample_on
from glft.funcspace.catalog import catalog_lookup, catalog_names, lookup_spec

__all__ = [
    'ExtendedReal', 'PosInf', 'NegInf', 'format_extended', 'parse_extended',
    'Domain', 'Reals', 'OpenBox', 'Singleton', 'OpenBall', 'AffinePreimage',
    'box', 'positive_orthant',
    'ConvexFunction', 'evaluate', 'grad_fd', 'hessian_fd', 'gradient_of', 'hessian_of',
    'AxisSpec', 'GridFunction', 'parse_grid_spec', 'sample', 'sample_on',
    'catalog_lookup', 'catalog_names', 'lookup_spec',
]
