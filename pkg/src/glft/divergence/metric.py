"""Hessian metrics g = Hess F (primal chart) and g* = Hess F* (dual chart)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from glft.core.config import hessian_step
from glft.funcspace.function import ConvexFunction, gradient_of, hessian_fd
from glft.legendre.pair import ConjugatePair
from glft.utils.exceptions import DomainError, EngineError
from glft.verification.report import VerificationReport, ViolationTracker

DUAL_METRIC_TOL = 1e-4


@dataclass(frozen=True)
class MetricResult:
    matrix: np.ndarray
    spd: bool
    step: float

    def to_dict(self) -> dict:
        return {'matrix': self.matrix.tolist(), 'spd': self.spd, 'step': self.step}


def is_spd(matrix: np.ndarray) -> bool:
    try:
        np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError:
        return False
    return True


def hessian_metric(f: ConvexFunction, theta, h: Optional[float] = None) -> MetricResult:
    """Central second differences of F at theta, symmetrized, with an SPD flag.

    Raises DomainError when the stencil leaves the domain.
    """
    h = hessian_step() if h is None else h
    matrix = hessian_fd(f, theta, h)
    return MetricResult(matrix=matrix, spd=is_spd(matrix), step=h)


def dual_metric_check(pair: ConjugatePair, thetas: Iterable,
                      tol: float = DUAL_METRIC_TOL,
                      h: Optional[float] = None) -> VerificationReport:
    """g(theta) against inv(g*(grad F(theta))) at linked points."""
    tracker = ViolationTracker("dual-metric", tol)
    F, G = pair.primal, pair.dual
    for theta in thetas:
        theta = F.point(theta)
        try:
            eta, _ = gradient_of(F, theta)
            g = hessian_metric(F, theta, h)
            g_star = hessian_metric(G, eta, h)
        except (DomainError, EngineError) as e:
            tracker.skip(str(e))
            continue
        if not g_star.spd:
            tracker.record(float('inf'), True, theta=theta, eta=eta, reason="dual metric not SPD")
            continue
        inverse = np.linalg.inv(g_star.matrix)
        error = float(np.max(np.abs(g.matrix - inverse)) / max(1.0, float(np.max(np.abs(inverse)))))
        tracker.record(error, error > tol, theta=theta, eta=eta,
                       metric=g.matrix, inverse_dual_metric=inverse)
    return tracker.report(primal=F.label, dual=G.label)
