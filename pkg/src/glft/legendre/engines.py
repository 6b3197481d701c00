"""Pointwise evaluation of (L F)(eta) behind one interface.

Engines: `closed` (catalog rules), `newton` (gradient inversion),
`grid-brute` and `grid-fast` (discrete sup over a sampled window).
"""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from collections import OrderedDict
from typing import Any, List, Optional, Tuple

import numpy as np

from glft.core.config import get_config
from glft.funcspace.domain import AffinePreimage, Domain, OpenBall, OpenBox, Reals, Singleton
from glft.funcspace.function import ConvexFunction
from glft.funcspace.grid import GridFunction, sample_on
from glft.legendre.closed_form import conjugate_closed
from glft.legendre.grid_transform import brute_sup, fast_sup, grid_hull
from glft.legendre.newton import conjugate_newton
from glft.utils.exceptions import (
    DimensionError,
    DomainError,
    GridWindowError,
    OutOfRangeError,
    UsageError,
)

ENGINE_NAMES = ("closed", "newton", "grid-brute", "grid-fast")


# Functions remembered per engine; older entries are dropped first.
CACHE_SIZE = 8


class RecentCache:
    """Per-function results for the most recent CACHE_SIZE functions.

    Entries are keyed by id(f) and hold f itself, so at most `size`
    functions are kept alive by an engine.
    """

    def __init__(self, size: int = CACHE_SIZE):
        self.size = size
        self._entries: "OrderedDict[int, Tuple[ConvexFunction, Any]]" = OrderedDict()

    def get(self, f: ConvexFunction) -> Optional[Any]:
        hit = self._entries.get(id(f))
        if hit is None or hit[0] is not f:
            return None
        self._entries.move_to_end(id(f))
        return hit[1]

    def put(self, f: ConvexFunction, value: Any) -> None:
        self._entries[id(f)] = (f, value)
        self._entries.move_to_end(id(f))
        while len(self._entries) > self.size:
            self._entries.popitem(last=False)

    def __len__(self) -> int:
        return len(self._entries)


class ConjugationEngine(ABC):
    """Evaluates the conjugate of a function at single dual points."""

    name: str = "abstract"

    @abstractmethod
    def evaluate(self, f: ConvexFunction, eta) -> float:
        """(L F)(eta) as a float (+inf allowed)."""

    def argmax(self, f: ConvexFunction, eta) -> Optional[np.ndarray]:
        """A maximiser of <theta, eta> - F(theta), when the engine knows one."""
        return None

    def conjugate(self, f: ConvexFunction) -> ConvexFunction:
        """L F as an evaluatable function backed by this engine."""
        return ConvexFunction(
            label=f"conjugate({f.label})",
            domain=Reals(f.dim),
            evaluator=lambda eta: self.evaluate(f, eta),
            family=f"{self.name}-conjugate",
            params={'base': f},
        )


class ClosedFormEngine(ConjugationEngine):
    name = "closed"

    def __init__(self):
        self._cache = RecentCache()

    def _conj(self, f: ConvexFunction) -> ConvexFunction:
        conj = self._cache.get(f)
        if conj is None:
            conj = conjugate_closed(f)
            self._cache.put(f, conj)
        return conj

    def evaluate(self, f: ConvexFunction, eta) -> float:
        return self._conj(f).value(eta)

    def conjugate(self, f: ConvexFunction) -> ConvexFunction:
        return self._conj(f)


class NewtonEngine(ConjugationEngine):
    """Gradient inversion; outside the gradient range the value is +inf.

    That reading is exact for Legendre-type functions, whose gradient
    range is the interior of the conjugate's domain.
    """

    name = "newton"

    def __init__(self, tol: Optional[float] = None, max_iter: Optional[int] = None):
        self.tol = tol
        self.max_iter = max_iter

    def solve(self, f: ConvexFunction, eta):
        return conjugate_newton(f, eta, tol=self.tol, max_iter=self.max_iter)

    def evaluate(self, f: ConvexFunction, eta) -> float:
        return self.solve(f, eta).value

    def argmax(self, f: ConvexFunction, eta) -> Optional[np.ndarray]:
        return self.solve(f, eta).argmax

    def conjugate(self, f: ConvexFunction) -> ConvexFunction:
        def evaluator(eta: np.ndarray) -> float:
            try:
                return self.evaluate(f, eta)
            except OutOfRangeError:
                return math.inf

        return ConvexFunction(
            label=f"conjugate({f.label})",
            domain=Reals(f.dim),
            evaluator=evaluator,
            gradient=lambda eta: self.solve(f, eta).argmax,
            family="newton-conjugate",
            params={'base': f},
            strictly_convex=f.legendre_type, legendre_type=f.legendre_type,
        )


def _window_axes(domain: Domain, window: float, nodes: int
                 ) -> Tuple[List[np.ndarray], List[Tuple[bool, bool]]]:
    """Sample axes for the primal window and whether each edge is a domain edge."""
    m = domain.dim
    if isinstance(domain, Singleton):
        axes = [np.array([x - 1.0, x, x + 1.0]) for x in domain.point]
        return axes, [(True, True)] * m
    if isinstance(domain, OpenBall):
        axes = [np.linspace(c - domain.radius, c + domain.radius, nodes) for c in domain.center]
        return axes, [(True, True)] * m
    lower = np.full(m, -np.inf)
    upper = np.full(m, np.inf)
    if isinstance(domain, OpenBox):
        lower, upper = domain.lower, domain.upper
    elif isinstance(domain, AffinePreimage) and m == 1 and isinstance(domain.base, OpenBox):
        slope, shift = float(domain.matrix[0, 0]), float(domain.shift[0])
        ends = sorted(((domain.base.lower[0] - shift) / slope,
                       (domain.base.upper[0] - shift) / slope))
        lower, upper = np.array([ends[0]]), np.array([ends[1]])
    axes, edges = [], []
    for k in range(m):
        lo = max(lower[k], -window)
        hi = min(upper[k], window)
        if not lo < hi:
            raise DomainError("domain does not meet the grid window")
        axes.append(np.linspace(lo, hi, nodes))
        edges.append((lo == lower[k], hi == upper[k]))
    return axes, edges


class GridEngine(ConjugationEngine):
    """Discrete sup over f sampled on [-W, W]^m intersected with the domain."""

    def __init__(self, fast: bool, window: Optional[float] = None, nodes: Optional[int] = None):
        self.fast = fast
        self.name = "grid-fast" if fast else "grid-brute"
        config = get_config()
        self.window = float(window if window is not None else config.get_with_default('grid.window'))
        self.nodes = nodes
        self._cache = RecentCache()

    def _node_count(self, m: int) -> int:
        if self.nodes is not None:
            return int(self.nodes)
        key = 'grid.nodes' if m == 1 else 'grid.nodes_2d'
        return int(get_config().get_with_default(key))

    def sampled(self, f: ConvexFunction) -> Tuple[GridFunction, List[Tuple[bool, bool]], Optional[np.ndarray]]:
        hit = self._cache.get(f)
        if hit is not None:
            return hit
        if f.dim > 2:
            raise DimensionError("grid engines handle one or two dimensions")
        axes, edges = _window_axes(f.domain, self.window, self._node_count(f.dim))
        grid = sample_on(f, axes)
        hull = grid_hull(grid) if (self.fast and f.dim == 1) else None
        self._cache.put(f, (grid, edges, hull))
        return grid, edges, hull

    def solve(self, f: ConvexFunction, eta) -> Tuple[float, np.ndarray]:
        eta = f.point(eta)
        grid, edges, hull = self.sampled(f)
        if hull is not None:
            out, arg = fast_sup(grid.axes[0], grid.values, hull, eta)
            value, index = float(out[0]), int(arg[0])
        else:
            value, index = brute_sup(grid.nodes(), grid.flat_values(), eta)
        position = np.unravel_index(index, grid.shape)
        for k, i in enumerate(position):
            at_lo, at_hi = i == 0, i == grid.shape[k] - 1
            if (at_lo and not edges[k][0]) or (at_hi and not edges[k][1]):
                raise GridWindowError(
                    f"discrete sup for eta={eta.tolist()} sits on the window edge; "
                    "the true conjugate may be larger")
        return value, grid.node(index)

    def evaluate(self, f: ConvexFunction, eta) -> float:
        return self.solve(f, eta)[0]

    def argmax(self, f: ConvexFunction, eta) -> Optional[np.ndarray]:
        return self.solve(f, eta)[1]


def get_engine(name: str, **kwargs) -> ConjugationEngine:
    """Engine by CLI name."""
    if name == "closed":
        return ClosedFormEngine()
    if name == "newton":
        return NewtonEngine(**kwargs)
    if name == "grid-brute":
        return GridEngine(fast=False, **kwargs)
    if name == "grid-fast":
        return GridEngine(fast=True, **kwargs)
    raise UsageError(f"unknown engine '{name}'; choose from {', '.join(ENGINE_NAMES)}")


