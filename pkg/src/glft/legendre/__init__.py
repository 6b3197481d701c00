"""The Legendre-Fenchel transform: engines, pairs, subdifferentials and checks."""

from glft.legendre.closed_form import conjugate_closed, has_closed_form
from glft.legendre.newton import NewtonResult, conjugate_newton
from glft.legendre.grid_transform import (
    biconjugate_grid,
    check_reverse_order,
    conjugate_grid,
    conjugate_grid_brute,
    conjugate_grid_fast,
    lower_hull,
    slope_axes,
)
from glft.legendre.engines import ENGINE_NAMES, ConjugationEngine, get_engine
from glft.legendre.pair import ConjugatePair, conjugate_pair
from glft.legendre.subdiff import Subdifferential1D, subdiff_1d
from glft.legendre.checks import check_fenchel_young, check_legendre_type, check_reciprocal

__all__ = [
    'conjugate_closed', 'has_closed_form',
    'NewtonResult', 'conjugate_newton',
    'biconjugate_grid', 'check_reverse_order', 'conjugate_grid',
    'conjugate_grid_brute', 'conjugate_grid_fast', 'lower_hull', 'slope_axes',
    'ENGINE_NAMES', 'ConjugationEngine', 'get_engine',
    'ConjugatePair', 'conjugate_pair',
    'Subdifferential1D', 'subdiff_1d',
    'check_fenchel_young', 'check_legendre_type', 'check_reciprocal',
]
