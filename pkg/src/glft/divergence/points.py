"""Points of a dually flat space given by their two coordinate systems."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from glft.core.config import tolerance
from glft.funcspace.function import ConvexFunction, gradient_of


@dataclass(frozen=True, eq=False)
class DualPoint:
    """Primal coordinates theta(p) and dual coordinates eta(p).

    `consistent` records whether eta = grad F(theta) was confirmed.
    """

    theta: np.ndarray
    eta: np.ndarray
    consistent: bool = False
    path: str = "unchecked"

    def __post_init__(self) -> None:
        object.__setattr__(self, 'theta', np.atleast_1d(np.asarray(self.theta, dtype=float)))
        object.__setattr__(self, 'eta', np.atleast_1d(np.asarray(self.eta, dtype=float)))

    @property
    def dim(self) -> int:
        return self.theta.shape[0]

    def swapped(self) -> 'DualPoint':
        """The same point read in the dual chart (roles of theta and eta exchanged)."""
        return DualPoint(theta=self.eta, eta=self.theta, consistent=self.consistent, path=self.path)

    def to_dict(self) -> dict:
        return {
            'theta': self.theta.tolist(),
            'eta': self.eta.tolist(),
            'consistent': self.consistent,
            'path': self.path,
        }


def coordinate_gap(f: ConvexFunction, theta, eta) -> float:
    """max |eta - grad F(theta)|, relative to max(1, |eta|)."""
    grad, _ = gradient_of(f, theta)
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    return float(np.max(np.abs(grad - eta)) / max(1.0, float(np.max(np.abs(eta)))))


def dual_point(f: ConvexFunction, theta) -> DualPoint:
    """Link theta to eta = grad F(theta)."""
    theta = f.point(theta)
    eta, path = gradient_of(f, theta)
    return DualPoint(theta=theta, eta=eta, consistent=True, path=path)


def dual_point_from_eta(f_star: ConvexFunction, eta) -> DualPoint:
    """Link eta to theta = grad F*(eta)."""
    eta = f_star.point(eta)
    theta, path = gradient_of(f_star, eta)
    return DualPoint(theta=theta, eta=eta, consistent=True, path=path)


def make_dual_point(f: ConvexFunction, theta, eta, tol: Optional[float] = None) -> DualPoint:
    """A DualPoint from given coordinates, flagged consistent when they are linked."""
    tol = tolerance('divergence') if tol is None else tol
    gap = coordinate_gap(f, theta, eta)
    return DualPoint(theta=theta, eta=eta, consistent=gap <= tol, path="checked")
