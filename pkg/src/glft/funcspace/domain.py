"""Effective domains of convex functions.

Domains are stored open (except the singleton of an indicator). Closure
values on the boundary are not the domain's business: catalog entries
carry explicit boundary overrides for that.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from glft.utils.exceptions import DimensionError, DomainError, ParameterError

# Membership in {a} is decided up to roundoff of affine maps.
SINGLETON_TOL = 1e-9


def as_point(theta, dim: int) -> np.ndarray:
    """Coerce to a 1-D float vector of the given dimension."""
    point = np.atleast_1d(np.asarray(theta, dtype=float))
    if point.ndim != 1 or point.shape[0] != dim:
        raise DimensionError(f"expected a point in R^{dim}, got shape {point.shape}")
    return point


class Domain(ABC):
    """Non-empty subset of R^m on which a function is finite."""

    kind: str = "abstract"

    @property
    @abstractmethod
    def dim(self) -> int:
        ...

    @property
    def is_open(self) -> bool:
        return True

    @abstractmethod
    def contains(self, theta: np.ndarray) -> bool:
        """Membership of the (open) domain."""

    @abstractmethod
    def interior_point(self) -> np.ndarray:
        """A canonical point of the domain."""

    @property
    def has_finite_boundary(self) -> bool:
        return True

    def sample_interior(self, rng: np.random.Generator, count: int,
                        window: float = 5.0) -> np.ndarray:
        """Points of the domain, clipped to a box of half-width `window`."""
        raise DomainError(f"{self.kind} domain cannot be sampled")

    def sample_boundary(self, rng: np.random.Generator, count: int,
                        window: float = 5.0) -> np.ndarray:
        """Points of the boundary, clipped to a box of half-width `window`."""
        raise DomainError(f"{self.kind} domain has no samplable boundary")

    def describe(self) -> str:
        return f"{self.kind}(m={self.dim})"


@dataclass(frozen=True)
class Reals(Domain):
    """All of R^m."""

    m: int
    kind: str = field(default="all", init=False)

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ParameterError("dimension must be positive")

    @property
    def dim(self) -> int:
        return self.m

    @property
    def has_finite_boundary(self) -> bool:
        return False

    def contains(self, theta: np.ndarray) -> bool:
        return bool(np.all(np.isfinite(theta)))

    def interior_point(self) -> np.ndarray:
        return np.zeros(self.m)

    def sample_interior(self, rng, count, window=5.0):
        return rng.uniform(-window, window, size=(count, self.m))


@dataclass(frozen=True, eq=False)
class OpenBox(Domain):
    """Product of open intervals (lower_i, upper_i); bounds may be infinite.

    With every bound finite this is an open box, otherwise a product of
    open half-lines and lines.
    """

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self) -> None:
        lower = np.atleast_1d(np.asarray(self.lower, dtype=float))
        upper = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if lower.shape != upper.shape or lower.ndim != 1:
            raise ParameterError("box bounds must be vectors of equal length")
        if not np.all(lower < upper):
            raise ParameterError("empty box: need lower < upper on every axis")
        object.__setattr__(self, 'lower', lower)
        object.__setattr__(self, 'upper', upper)

    @property
    def kind(self) -> str:  # type: ignore[override]
        if np.all(np.isfinite(self.lower)) and np.all(np.isfinite(self.upper)):
            return "open-box"
        return "open-halfspace-product"

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    @property
    def has_finite_boundary(self) -> bool:
        return bool(np.any(np.isfinite(self.lower)) or np.any(np.isfinite(self.upper)))

    def contains(self, theta: np.ndarray) -> bool:
        return bool(np.all(theta > self.lower) and np.all(theta < self.upper))

    def interior_point(self) -> np.ndarray:
        point = np.zeros(self.dim)
        for i, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            if np.isfinite(lo) and np.isfinite(hi):
                point[i] = 0.5 * (lo + hi)
            elif np.isfinite(lo):
                point[i] = lo + 1.0
            elif np.isfinite(hi):
                point[i] = hi - 1.0
        return point

    def clipped_bounds(self, window: float):
        """Finite sampling bounds: infinite sides are cut `window` away."""
        lo = self.lower.copy()
        hi = self.upper.copy()
        for i in range(self.dim):
            if not np.isfinite(lo[i]) and not np.isfinite(hi[i]):
                lo[i], hi[i] = -window, window
            elif not np.isfinite(lo[i]):
                lo[i] = hi[i] - window
            elif not np.isfinite(hi[i]):
                hi[i] = lo[i] + window
        return lo, hi

    def sample_interior(self, rng, count, window=5.0):
        lo, hi = self.clipped_bounds(window)
        # open interval: stay off the bounds by a relative margin
        span = hi - lo
        u = rng.uniform(1e-3, 1.0 - 1e-3, size=(count, self.dim))
        return lo + u * span

    def sample_boundary(self, rng, count, window=5.0):
        finite_axes = [i for i in range(self.dim)
                       if np.isfinite(self.lower[i]) or np.isfinite(self.upper[i])]
        if not finite_axes:
            raise DomainError("domain has no finite boundary")
        points = self.sample_interior(rng, count, window)
        for k in range(count):
            axis = finite_axes[int(rng.integers(len(finite_axes)))]
            sides = [b for b in (self.lower[axis], self.upper[axis]) if np.isfinite(b)]
            points[k, axis] = sides[int(rng.integers(len(sides)))]
        return points

    def describe(self) -> str:
        return f"{self.kind}(lower={self.lower.tolist()}, upper={self.upper.tolist()})"


@dataclass(frozen=True, eq=False)
class Singleton(Domain):
    """The closed set {a}: domain of an indicator of a point."""

    point: np.ndarray
    kind: str = field(default="singleton", init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'point', np.atleast_1d(np.asarray(self.point, dtype=float)))

    @property
    def dim(self) -> int:
        return self.point.shape[0]

    @property
    def is_open(self) -> bool:
        return False

    def contains(self, theta: np.ndarray) -> bool:
        return bool(np.allclose(theta, self.point, rtol=SINGLETON_TOL, atol=SINGLETON_TOL))

    def interior_point(self) -> np.ndarray:
        return self.point.copy()

    def describe(self) -> str:
        return f"singleton({self.point.tolist()})"


@dataclass(frozen=True, eq=False)
class OpenBall(Domain):
    """Open Euclidean ball."""

    center: np.ndarray
    radius: float = 1.0
    kind: str = field(default="open-ball", init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'center', np.atleast_1d(np.asarray(self.center, dtype=float)))
        if not self.radius > 0:
            raise ParameterError("ball radius must be positive")

    @property
    def dim(self) -> int:
        return self.center.shape[0]

    def contains(self, theta: np.ndarray) -> bool:
        return bool(np.linalg.norm(theta - self.center) < self.radius)

    def interior_point(self) -> np.ndarray:
        return self.center.copy()

    def sample_interior(self, rng, count, window=5.0):
        directions = rng.normal(size=(count, self.dim))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        radii = self.radius * rng.uniform(0.0, 0.999, size=(count, 1)) ** (1.0 / self.dim)
        return self.center + radii * directions

    def sample_boundary(self, rng, count, window=5.0):
        directions = rng.normal(size=(count, self.dim))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        return self.center + self.radius * directions


@dataclass(frozen=True, eq=False)
class AffinePreimage(Domain):
    """{theta : A theta + b in base}; the domain of a deformed function."""

    base: Domain
    matrix: np.ndarray
    shift: np.ndarray
    kind: str = field(default="affine-preimage", init=False)

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def is_open(self) -> bool:
        return self.base.is_open

    @property
    def has_finite_boundary(self) -> bool:
        return self.base.has_finite_boundary

    def forward(self, theta: np.ndarray) -> np.ndarray:
        return self.matrix @ theta + self.shift

    def backward(self, u: np.ndarray) -> np.ndarray:
        return np.linalg.solve(self.matrix, u - self.shift)

    def contains(self, theta: np.ndarray) -> bool:
        return self.base.contains(self.forward(theta))

    def interior_point(self) -> np.ndarray:
        return self.backward(self.base.interior_point())

    def sample_interior(self, rng, count, window=5.0):
        base_points = self.base.sample_interior(rng, count, window)
        return np.array([self.backward(u) for u in base_points])

    def sample_boundary(self, rng, count, window=5.0):
        base_points = self.base.sample_boundary(rng, count, window)
        return np.array([self.backward(u) for u in base_points])

    def describe(self) -> str:
        return f"affine-preimage({self.base.describe()})"


def box(lower: Sequence[float], upper: Sequence[float]) -> OpenBox:
    return OpenBox(np.asarray(lower, dtype=float), np.asarray(upper, dtype=float))


def positive_orthant(m: int, sign: float = 1.0) -> OpenBox:
    """(0, inf)^m, or (-inf, 0)^m with sign=-1."""
    if sign > 0:
        return OpenBox(np.zeros(m), np.full(m, np.inf))
    return OpenBox(np.full(m, -np.inf), np.zeros(m))
