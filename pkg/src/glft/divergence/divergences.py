"""Bregman, Fenchel-Young and flat divergences.

For a Legendre-type pair (F, F*) the three agree on linked inputs:

    Y(theta : eta') = B_F(theta : theta') = B_F*(eta' : eta)

with theta' = grad F*(eta') and eta = grad F(theta).
"""
from __future__ import annotations

import math
from typing import Any, Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from glft.core.config import tolerance
from glft.divergence.points import DualPoint
from glft.funcspace.function import ConvexFunction, gradient_of
from glft.legendre.pair import ConjugatePair
from glft.utils.exceptions import DomainError
from glft.verification.report import jsonable


def _finite_value(f: ConvexFunction, point: np.ndarray) -> float:
    value = f.value(point)
    if not math.isfinite(value):
        raise DomainError(f"{f.label} is +inf at {point.tolist()}")
    return value


def bregman_with_path(f: ConvexFunction, theta, theta_prime) -> Tuple[float, str]:
    """B_F(theta : theta') and the gradient path used at theta'."""
    theta = f.point(theta)
    theta_prime = f.point(theta_prime)
    grad, path = gradient_of(f, theta_prime)
    value = (_finite_value(f, theta) - _finite_value(f, theta_prime)
             - float((theta - theta_prime) @ grad))
    return value, path


def bregman(f: ConvexFunction, theta, theta_prime) -> float:
    """F(theta) - F(theta') - <theta - theta', grad F(theta')>."""
    return bregman_with_path(f, theta, theta_prime)[0]


def fenchel_young(f: ConvexFunction, f_star: ConvexFunction, theta, eta_prime) -> float:
    """F(theta) + F*(eta') - <theta, eta'>."""
    theta = f.point(theta)
    eta_prime = f_star.point(eta_prime)
    return _finite_value(f, theta) + _finite_value(f_star, eta_prime) - float(theta @ eta_prime)


def flat_divergence(pair: ConjugatePair, p: DualPoint, q: DualPoint) -> float:
    """D(p : q) = F(theta(p)) + F*(eta(q)) - <theta(p), eta(q)>.

    Calling it on pair.swapped() with swapped points gives the dual
    divergence: D*(p : q) = D(q : p).
    """
    for name, point in (('p', p), ('q', q)):
        if not point.consistent:
            raise DomainError(f"DualPoint {name} has unlinked coordinates")
    return fenchel_young(pair.primal, pair.dual, p.theta, q.eta)


def dual_flat_divergence(pair: ConjugatePair, p: DualPoint, q: DualPoint) -> float:
    """D with the roles of F and F* exchanged, evaluated at (p : q)."""
    return flat_divergence(pair.swapped(), p.swapped(), q.swapped())


class DivergenceReport(BaseModel):
    """The three readings of one divergence and the inputs that link them."""

    bregman_primal: float
    bregman_dual: float
    fenchel_young: float
    inputs: Dict[str, Any]
    paths: Dict[str, str] = Field(default_factory=dict)
    tolerance: float = 1e-6

    @property
    def max_discrepancy(self) -> float:
        values = (self.bregman_primal, self.bregman_dual, self.fenchel_young)
        return max(values) - min(values)

    @property
    def agrees(self) -> bool:
        scale = max(1.0, abs(self.fenchel_young))
        return self.max_discrepancy <= self.tolerance * scale

    def to_dict(self) -> Dict[str, Any]:
        data = jsonable(self.model_dump())
        data['max_discrepancy'] = jsonable(self.max_discrepancy)
        data['agrees'] = self.agrees
        return data


def divergence_report(pair: ConjugatePair, theta, eta_prime,
                      tol: Optional[float] = None) -> DivergenceReport:
    """Y(theta : eta'), B_F(theta : theta') and B_F*(eta' : eta) side by side."""
    F, G = pair.primal, pair.dual
    theta = F.point(theta)
    eta_prime = G.point(eta_prime)
    eta, eta_path = gradient_of(F, theta)
    theta_prime, theta_prime_path = gradient_of(G, eta_prime)

    fy = fenchel_young(F, G, theta, eta_prime)
    b_primal, primal_path = bregman_with_path(F, theta, theta_prime)
    b_dual, dual_path = bregman_with_path(G, eta_prime, eta)
    return DivergenceReport(
        bregman_primal=b_primal,
        bregman_dual=b_dual,
        fenchel_young=fy,
        inputs={
            'theta': theta.tolist(),
            'theta_prime': theta_prime.tolist(),
            'eta': eta.tolist(),
            'eta_prime': eta_prime.tolist(),
        },
        paths={
            'grad_F(theta)': eta_path,
            'grad_F*(eta_prime)': theta_prime_path,
            'bregman_primal': primal_path,
            'bregman_dual': dual_path,
        },
        tolerance=tolerance('divergence') if tol is None else tol,
    )
