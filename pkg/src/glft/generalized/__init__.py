"""The generalized Legendre-Fenchel transform and its deformation identity."""

from glft.generalized.transform import (
    GeneralizedTransform,
    as_gen_params,
    generalized_conjugate,
    ordinary_reduction,
)
from glft.generalized.theorem import place_probes, theorem_check, theorem_check_reversed

__all__ = [
    'GeneralizedTransform', 'as_gen_params', 'generalized_conjugate', 'ordinary_reduction',
    'place_probes', 'theorem_check', 'theorem_check_reversed',
]
