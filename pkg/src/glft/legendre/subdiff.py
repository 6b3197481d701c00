"""One-dimensional subdifferentials from one-sided differences."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from glft.core.config import fd_step, tolerance
from glft.funcspace.extended import ExtendedReal
from glft.funcspace.function import ConvexFunction
from glft.utils.exceptions import DimensionError


@dataclass(frozen=True)
class Subdifferential1D:
    """The interval [lower, upper] of slopes at `at`; empty outside dom F.

    At a boundary point of the domain one endpoint may be infinite.
    """

    at: float
    lower: ExtendedReal
    upper: ExtendedReal
    empty: bool = False
    singleton_tol: float = 1e-4

    @property
    def width(self) -> float:
        if self.empty:
            return math.nan
        return float(self.upper) - float(self.lower)

    @property
    def midpoint(self) -> float:
        return 0.5 * (float(self.lower) + float(self.upper))

    @property
    def is_singleton(self) -> bool:
        if self.empty or not (self.lower.is_finite and self.upper.is_finite):
            return False
        return self.width <= self.singleton_tol * max(1.0, abs(self.midpoint))

    @property
    def value(self) -> Optional[float]:
        """The gradient when the subdifferential is a singleton."""
        return self.midpoint if self.is_singleton else None

    def contains(self, eta: float, tol: float = 0.0) -> bool:
        if self.empty:
            return False
        return float(self.lower) - tol <= eta <= float(self.upper) + tol

    def to_dict(self) -> dict:
        return {
            'at': self.at,
            'lower': str(self.lower),
            'upper': str(self.upper),
            'empty': self.empty,
            'singleton': self.is_singleton,
        }


def subdiff_1d(f: ConvexFunction, theta: float, h: Optional[float] = None) -> Subdifferential1D:
    """[left derivative, right derivative] at theta by one-sided differences."""
    if f.dim != 1:
        raise DimensionError("subdiff_1d needs a one-dimensional function")
    h = fd_step() if h is None else h
    singleton_tol = tolerance('subdiff_singleton')
    theta = float(theta)
    center = f.value([theta])
    if not math.isfinite(center):
        return Subdifferential1D(theta, ExtendedReal(math.inf), ExtendedReal(-math.inf),
                                 empty=True, singleton_tol=singleton_tol)
    left_value = f.value([theta - h])
    right_value = f.value([theta + h])
    left = (center - left_value) / h if math.isfinite(left_value) else -math.inf
    right = (right_value - center) / h if math.isfinite(right_value) else math.inf
    return Subdifferential1D(theta, ExtendedReal(left), ExtendedReal(right),
                             singleton_tol=singleton_tol)
