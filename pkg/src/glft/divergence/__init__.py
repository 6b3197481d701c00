"""Divergences of dually flat spaces built on conjugate pairs."""

from glft.divergence.points import (
    DualPoint,
    coordinate_gap,
    dual_point,
    dual_point_from_eta,
    make_dual_point,
)
from glft.divergence.divergences import (
    DivergenceReport,
    bregman,
    bregman_with_path,
    divergence_report,
    dual_flat_divergence,
    fenchel_young,
    flat_divergence,
)
from glft.divergence.invariance import deformed_coordinates, invariance_check, invariance_sides
from glft.divergence.metric import MetricResult, dual_metric_check, hessian_metric, is_spd

__all__ = [
    'DualPoint', 'coordinate_gap', 'dual_point', 'dual_point_from_eta', 'make_dual_point',
    'DivergenceReport', 'bregman', 'bregman_with_path', 'divergence_report',
    'dual_flat_divergence', 'fenchel_young', 'flat_divergence',
    'deformed_coordinates', 'invariance_check', 'invariance_sides',
    'MetricResult', 'dual_metric_check', 'hessian_metric', 'is_spd',
]
