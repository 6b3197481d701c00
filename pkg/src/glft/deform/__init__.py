"""Affine deformations of convex functions and the diamond involution."""

from glft.deform.params import DeformParams, GenParams, diamond, params_from_literal
from glft.deform.deformation import deform, dual_argument, grad_deformed_conjugate
from glft.deform.sampling import param_stream, random_params

__all__ = [
    'DeformParams', 'GenParams', 'diamond', 'params_from_literal',
    'deform', 'dual_argument', 'grad_deformed_conjugate',
    'param_stream', 'random_params',
]
