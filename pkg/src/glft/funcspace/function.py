"""Evaluatable extended-real convex functions and their finite differences."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Mapping, Optional, Tuple

import numpy as np

from glft.core.config import fd_step, hessian_step
from glft.funcspace.domain import Domain, as_point
from glft.funcspace.extended import ExtendedReal
from glft.utils.exceptions import DomainError

PointMap = Callable[[np.ndarray], Any]


@dataclass(frozen=True, eq=False)
class ConvexFunction:
    """A proper lsc. convex function R^m -> R U {+inf}.

    `evaluator` is only ever called on points of `domain`; outside it the
    value is +inf unless `boundary_value` returns the closure value there.
    The flags mark the smooth subclasses: `legendre_type` for Legendre-type
    functions, `smooth` for twice differentiable strictly convex ones.
    """

    label: str
    domain: Domain
    evaluator: PointMap
    gradient: Optional[PointMap] = None
    hessian: Optional[PointMap] = None
    boundary_value: Optional[Callable[[np.ndarray], Optional[float]]] = None
    family: str = "custom"
    params: Mapping[str, Any] = field(default_factory=dict)
    strictly_convex: bool = False
    legendre_type: bool = False
    smooth: bool = False

    @property
    def dim(self) -> int:
        return self.domain.dim

    def point(self, theta) -> np.ndarray:
        return as_point(theta, self.dim)

    def value(self, theta) -> float:
        """Float value, +inf outside the domain (closure overrides aside)."""
        point = self.point(theta)
        if self.domain.contains(point):
            return float(self.evaluator(point))
        if self.boundary_value is not None:
            closure = self.boundary_value(point)
            if closure is not None:
                return float(closure)
        return math.inf

    __call__ = value

    def grad(self, theta) -> np.ndarray:
        point = self.point(theta)
        if self.gradient is None:
            raise DomainError(f"{self.label} has no analytic gradient")
        if not self.domain.contains(point):
            raise DomainError(f"{self.label}: gradient requested outside the domain at {point}")
        return np.atleast_1d(np.asarray(self.gradient(point), dtype=float))

    def hess(self, theta) -> np.ndarray:
        point = self.point(theta)
        if self.hessian is None:
            raise DomainError(f"{self.label} has no analytic Hessian")
        if not self.domain.contains(point):
            raise DomainError(f"{self.label}: Hessian requested outside the domain at {point}")
        return np.atleast_2d(np.asarray(self.hessian(point), dtype=float))

    def relabel(self, label: str) -> 'ConvexFunction':
        return replace(self, label=label)


def evaluate(f: ConvexFunction, theta) -> ExtendedReal:
    """f(theta) on the extended real line."""
    return ExtendedReal(f.value(theta))


def _stencil_value(f: ConvexFunction, point: np.ndarray) -> float:
    if not f.domain.contains(point):
        raise DomainError(f"{f.label}: finite-difference stencil leaves the domain at {point}")
    value = f.value(point)
    if not math.isfinite(value):
        raise DomainError(f"{f.label}: non-finite value {value} in stencil at {point}")
    return value


def grad_fd(f: ConvexFunction, theta, h: Optional[float] = None) -> np.ndarray:
    """Central-difference gradient (f(x + h e_i) - f(x - h e_i)) / 2h."""
    h = fd_step() if h is None else h
    x = f.point(theta)
    grad = np.zeros(f.dim)
    for i in range(f.dim):
        step = np.zeros(f.dim)
        step[i] = h
        fplus = _stencil_value(f, x + step)
        fminus = _stencil_value(f, x - step)
        grad[i] = (fplus - fminus) / (2 * h)
    return grad


def hessian_fd(f: ConvexFunction, theta, h: Optional[float] = None) -> np.ndarray:
    """Central second differences, symmetrized."""
    h = hessian_step() if h is None else h
    x = f.point(theta)
    m = f.dim
    center = _stencil_value(f, x)
    hess = np.zeros((m, m))
    basis = np.eye(m) * h
    for i in range(m):
        hess[i, i] = (_stencil_value(f, x + basis[i]) - 2.0 * center
                      + _stencil_value(f, x - basis[i])) / h ** 2
        for j in range(i + 1, m):
            hess[i, j] = (_stencil_value(f, x + basis[i] + basis[j])
                          - _stencil_value(f, x + basis[i] - basis[j])
                          - _stencil_value(f, x - basis[i] + basis[j])
                          + _stencil_value(f, x - basis[i] - basis[j])) / (4 * h ** 2)
            hess[j, i] = hess[i, j]
    return 0.5 * (hess + hess.T)


def gradient_of(f: ConvexFunction, theta, h: Optional[float] = None) -> Tuple[np.ndarray, str]:
    """Analytic gradient when available, central differences otherwise.

    Returns the vector and the path used: "analytic" or "finite-difference".
    """
    if f.gradient is not None:
        return f.grad(theta), "analytic"
    return grad_fd(f, theta, h), "finite-difference"


def hessian_of(f: ConvexFunction, theta, h: Optional[float] = None) -> Tuple[np.ndarray, str]:
    if f.hessian is not None:
        return f.hess(theta), "analytic"
    return hessian_fd(f, theta, h), "finite-difference"
