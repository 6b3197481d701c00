"""Affine invariance of the flat divergence under a deformation P.

With theta_bar = A^{-1}(theta - b) and eta_bar = grad F_P(theta_bar),

    D(p : q) = (1/lam) Y_{F_P, F*_{diamond(P)}}(theta_bar(p) : eta_bar(q)).
"""
from __future__ import annotations

from typing import Optional, Union

import numpy as np

from glft.core.config import tolerance
from glft.deform.deformation import deform
from glft.deform.params import DeformParams, diamond
from glft.divergence.divergences import fenchel_young, flat_divergence
from glft.divergence.points import DualPoint
from glft.funcspace.function import ConvexFunction, gradient_of
from glft.legendre.engines import ConjugationEngine, get_engine
from glft.legendre.pair import ConjugatePair
from glft.utils.exceptions import DomainError, EngineError
from glft.verification.report import VerificationReport, ViolationTracker


def deformed_coordinates(f_deformed: ConvexFunction, P: DeformParams,
                         point: DualPoint) -> DualPoint:
    """(theta_bar, eta_bar) of a point for the deformed potential."""
    theta_bar = P.solve(point.theta - P.b)
    eta_bar, path = gradient_of(f_deformed, theta_bar)
    return DualPoint(theta=theta_bar, eta=eta_bar, consistent=True, path=path)


def invariance_sides(f: ConvexFunction, P: DeformParams, p: DualPoint, q: DualPoint,
                     engine: Union[str, ConjugationEngine] = "closed") -> dict:
    """Both sides of the invariance identity and the deformed coordinates."""
    engine = get_engine(engine) if isinstance(engine, str) else engine
    f_star = engine.conjugate(f)
    lhs = flat_divergence(ConjugatePair(f, f_star, engine.name), p, q)

    f_deformed = deform(f, P)
    f_star_deformed = deform(f_star, diamond(P))
    p_bar = deformed_coordinates(f_deformed, P, p)
    q_bar = deformed_coordinates(f_deformed, P, q)
    rhs = fenchel_young(f_deformed, f_star_deformed, p_bar.theta, q_bar.eta) / P.lam
    return {'lhs': lhs, 'rhs': rhs, 'theta_bar': p_bar.theta, 'eta_bar': q_bar.eta}


def invariance_check(f: ConvexFunction, P: DeformParams, p: DualPoint, q: DualPoint,
                     engine: Union[str, ConjugationEngine] = "closed",
                     tol: Optional[float] = None) -> VerificationReport:
    """Compare D(p : q) with (1/lam) Y_{F_P, F*_{diamond(P)}}(theta_bar(p) : eta_bar(q))."""
    tol = tolerance('invariance') if tol is None else tol
    tracker = ViolationTracker("invariance", tol)
    try:
        sides = invariance_sides(f, P, p, q, engine)
    except (EngineError, DomainError) as e:
        tracker.skip(f"{type(e).__name__}: {e}")
        return tracker.report(function=f.label, P=P.to_dict())
    lhs, rhs = sides['lhs'], sides['rhs']
    diff = abs(lhs - rhs)
    tracker.record(diff, diff > tol * max(1.0, abs(lhs)),
                   theta_p=p.theta, eta_q=q.eta, lhs=lhs, rhs=rhs)
    return tracker.report(function=f.label, P=P.to_dict(), lam=P.lam,
                          theta_bar=np.asarray(sides['theta_bar']),
                          eta_bar=np.asarray(sides['eta_bar']))
