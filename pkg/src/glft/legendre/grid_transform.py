"""Discrete Legendre-Fenchel transform on 1-D / 2-D grids.

The brute-force transform is the oracle: for each dual node it takes the
max of <theta, eta> - g(theta) over the finite primal nodes, ties going
to the smallest node in lexicographic order. The fast 1-D transform
reproduces it bit for bit from the lower convex hull of the samples.
"""
from __future__ import annotations

from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.spatial import Delaunay, QhullError

from glft.core.config import tolerance
from glft.funcspace.grid import AxisSpec, GridFunction, _check_axes
from glft.utils.exceptions import DimensionError
from glft.verification.report import VerificationReport, ViolationTracker

AxesLike = Sequence[Union[AxisSpec, np.ndarray]]

# Max number of (dual, primal) pairs materialised per chunk.
_CHUNK_CELLS = 4_000_000
# Refinement windows wider than this are evaluated one dual node at a time.
_VECTOR_WINDOW = 64
# Rounding allowance, in units of eps times the magnitude of the terms.
_TIE_ULPS = 64


def dual_arrays(dual_axes: AxesLike) -> Tuple[np.ndarray, ...]:
    arrays = [spec.samples() if isinstance(spec, AxisSpec) else np.asarray(spec, dtype=float)
              for spec in dual_axes]
    return _check_axes(arrays)


def _dual_nodes(arrays: Tuple[np.ndarray, ...]) -> np.ndarray:
    mesh = np.meshgrid(*arrays, indexing='ij')
    return np.stack([m.ravel() for m in mesh], axis=1)


def _pair_values(dual: np.ndarray, primal: np.ndarray, g: np.ndarray) -> np.ndarray:
    """<theta, eta> - g(theta) for every (dual row, primal row) pair."""
    total = dual[:, 0:1] * primal[:, 0]
    for k in range(1, dual.shape[1]):
        total = total + dual[:, k:k + 1] * primal[:, k]
    return total - g


def conjugate_grid_brute(g: GridFunction, dual_axes: AxesLike) -> GridFunction:
    """Brute-force sup over all finite primal nodes (O(n k))."""
    arrays = dual_arrays(dual_axes)
    if len(arrays) != g.dim:
        raise DimensionError(f"dual grid has {len(arrays)} axes, primal has {g.dim}")
    values = g.flat_values()
    finite = np.flatnonzero(np.isfinite(values))
    primal = g.nodes()[finite]
    g_finite = values[finite]
    dual = _dual_nodes(arrays)

    out = np.empty(dual.shape[0])
    arg = np.empty(dual.shape[0], dtype=np.int64)
    chunk = max(1, _CHUNK_CELLS // max(1, finite.shape[0]))
    for start in range(0, dual.shape[0], chunk):
        block = _pair_values(dual[start:start + chunk], primal, g_finite)
        best = np.argmax(block, axis=1)
        out[start:start + chunk] = block[np.arange(block.shape[0]), best]
        arg[start:start + chunk] = finite[best]
    shape = tuple(a.shape[0] for a in arrays)
    return GridFunction(arrays, out.reshape(shape), argmax=arg.reshape(shape),
                        label=f"conjugate({g.label})")


def lower_hull(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Indices of the lower convex hull of points sorted by x (monotone chain).

    Collinear middle points are kept.
    """
    xs, ys = np.asarray(x, dtype=float).tolist(), np.asarray(y, dtype=float).tolist()
    hull = []
    for i in range(len(xs)):
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            cross = (xs[a] - xs[o]) * (ys[i] - ys[o]) - (ys[a] - ys[o]) * (xs[i] - xs[o])
            if cross < 0:
                hull.pop()
            else:
                break
        hull.append(i)
    return np.asarray(hull, dtype=np.int64)


def conjugate_grid_fast(g: GridFunction, dual_axes: AxesLike) -> GridFunction:
    """Linear-time 1-D discrete transform, identical to conjugate_grid_brute.

    The optimal hull vertex is nondecreasing in eta, so it is found by
    merging the sorted dual nodes with the sorted hull slopes. The window
    around it is then widened over hull vertices whose value comes within
    rounding of the maximum, and the argmax is settled among the original
    nodes of that window with the arithmetic and tie rule of the oracle.
    """
    if g.dim != 1:
        raise DimensionError("the fast transform is 1-D only")
    (eta,) = dual_arrays(dual_axes)
    out, arg = fast_sup(g.axes[0], g.values, grid_hull(g), eta)
    return GridFunction((eta,), out, argmax=arg, label=f"conjugate({g.label})")


def grid_hull(g: GridFunction) -> np.ndarray:
    """Original node indices of the lower hull of the finite samples (1-D)."""
    values = g.values
    finite = np.flatnonzero(np.isfinite(values))
    return finite[lower_hull(g.axes[0][finite], values[finite])]


def _rounding_slack(theta: np.ndarray, values: np.ndarray, eta: np.ndarray) -> np.ndarray:
    """Bound on the rounding error of eta * theta - g(theta) over the finite nodes."""
    finite = np.isfinite(values)
    theta_max = float(np.max(np.abs(theta[finite])))
    value_max = float(np.max(np.abs(values[finite])))
    return _TIE_ULPS * np.finfo(float).eps * (np.abs(eta) * theta_max + value_max)


def _widen(lo_v: np.ndarray, hi_v: np.ndarray, vertex_value, floor: np.ndarray,
           last: int) -> Tuple[np.ndarray, np.ndarray]:
    """Move the vertex bounds outwards while the next vertex reaches `floor`."""
    lo_v, hi_v = lo_v.copy(), hi_v.copy()
    rows = np.flatnonzero(lo_v > 0)
    while rows.size:
        reach = vertex_value(rows, lo_v[rows] - 1) >= floor[rows]
        rows = rows[reach]
        lo_v[rows] -= 1
        rows = rows[lo_v[rows] > 0]
    rows = np.flatnonzero(hi_v < last)
    while rows.size:
        reach = vertex_value(rows, hi_v[rows] + 1) >= floor[rows]
        rows = rows[reach]
        hi_v[rows] += 1
        rows = rows[hi_v[rows] < last]
    return lo_v, hi_v


def _window_sup(theta: np.ndarray, values: np.ndarray, eta: np.ndarray,
                lo: np.ndarray, hi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Max and first argmax of eta * theta - g over nodes lo..hi, row by row."""
    width = hi - lo + 1
    out = np.empty(eta.shape[0])
    arg = np.empty(eta.shape[0], dtype=np.int64)
    narrow = width <= _VECTOR_WINDOW
    if np.any(narrow):
        rows = np.flatnonzero(narrow)
        span = int(width[rows].max())
        index = lo[rows, None] + np.arange(span)[None, :]
        valid = index <= hi[rows, None]
        index = np.minimum(index, hi[rows, None])
        block = eta[rows, None] * theta[index] - values[index]
        block[~valid] = -np.inf
        block[~np.isfinite(values[index])] = -np.inf
        best = np.argmax(block, axis=1)
        out[rows] = block[np.arange(rows.shape[0]), best]
        arg[rows] = index[np.arange(rows.shape[0]), best]
    for row in np.flatnonzero(~narrow):
        window = np.arange(lo[row], hi[row] + 1)
        window = window[np.isfinite(values[window])]
        block = eta[row] * theta[window] - values[window]
        best = int(np.argmax(block))
        out[row] = block[best]
        arg[row] = window[best]
    return out, arg


def fast_sup(theta: np.ndarray, values: np.ndarray, hull: np.ndarray,
             eta: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Discrete sup and argmax for sorted `eta` given the lower hull.

    Every node lies on or above the hull, so its value is at most the larger
    of the two hull vertices around it; nodes outside the widened window
    therefore stay below the maximum even after rounding.
    """
    eta = np.asarray(eta, dtype=float)
    last = hull.shape[0] - 1
    if last > 0:
        slopes = np.diff(values[hull]) / np.diff(theta[hull])
        vertex = np.searchsorted(slopes, eta, side='left')
    else:
        vertex = np.zeros(eta.shape[0], dtype=np.int64)
    lo_v = np.maximum(vertex - 1, 0)
    hi_v = np.minimum(vertex + 1, last)

    def vertex_value(rows: np.ndarray, v: np.ndarray) -> np.ndarray:
        node = hull[v]
        return eta[rows] * theta[node] - values[node]

    best = np.max(np.stack([vertex_value(np.arange(eta.shape[0]), np.clip(vertex + d, 0, last))
                            for d in (-1, 0, 1)]), axis=0)
    floor = best - _rounding_slack(theta, values, eta)
    lo_v, hi_v = _widen(lo_v, hi_v, vertex_value, floor, last)
    lo = hull[np.maximum(lo_v - 1, 0)]
    hi = hull[np.minimum(hi_v + 1, last)]
    return _window_sup(theta, values, eta, lo, hi)


def brute_sup(nodes: np.ndarray, values: np.ndarray, eta: np.ndarray) -> Tuple[float, int]:
    """Discrete sup at a single dual point over flat (nodes, values)."""
    finite = np.flatnonzero(np.isfinite(values))
    block = _pair_values(np.atleast_2d(eta), nodes[finite], values[finite])[0]
    best = int(np.argmax(block))
    return float(block[best]), int(finite[best])


def conjugate_grid(g: GridFunction, dual_axes: AxesLike, fast: bool = True) -> GridFunction:
    """Fast transform in 1-D, brute force otherwise."""
    if fast and g.dim == 1:
        return conjugate_grid_fast(g, dual_axes)
    return conjugate_grid_brute(g, dual_axes)


def slope_axes(g: GridFunction) -> Tuple[np.ndarray, ...]:
    """Dual axes spanning [min slope, max slope] of consecutive finite nodes."""
    axes = []
    for k in range(g.dim):
        values = np.moveaxis(g.values, k, -1)
        x = g.axes[k]
        dx = np.diff(x)
        dv = np.diff(values, axis=-1)
        usable = np.isfinite(values[..., 1:]) & np.isfinite(values[..., :-1])
        slopes = (dv / dx)[usable] if np.any(usable) else np.array([])
        if slopes.size == 0:
            lo, hi = float(x[0]), float(x[-1])
        else:
            lo, hi = float(slopes.min()), float(slopes.max())
            if hi - lo <= 1e-12 * max(1.0, abs(lo), abs(hi)):
                lo, hi = lo - 1.0, hi + 1.0
        axes.append(np.linspace(lo, hi, x.shape[0]))
    return tuple(axes)


def _outside_hull(g: GridFunction) -> np.ndarray:
    """Mask of nodes outside the convex hull of the finite nodes."""
    finite = np.isfinite(g.values)
    if g.dim == 1:
        x = g.axes[0]
        inside = (x >= x[finite].min()) & (x <= x[finite].max())
        return ~inside
    nodes = g.nodes()
    points = nodes[finite.ravel()]
    try:
        inside = Delaunay(points).find_simplex(nodes) >= 0
    except (QhullError, ValueError):
        lo, hi = points.min(axis=0), points.max(axis=0)
        inside = np.all((nodes >= lo) & (nodes <= hi), axis=1)
    return ~inside.reshape(g.shape)


def biconjugate_grid(g: GridFunction, dual_axes: Optional[AxesLike] = None) -> GridFunction:
    """(g*)* on the primal grid.

    Dual axes default to slope_axes(g). Nodes outside the convex hull of
    the finite samples stay +inf.
    """
    arrays = dual_arrays(dual_axes) if dual_axes is not None else slope_axes(g)
    conj = conjugate_grid(g, arrays)
    back = conjugate_grid(conj, g.axes)
    values = back.values.copy()
    values[_outside_hull(g)] = np.inf
    return GridFunction(g.axes, values, label=f"biconjugate({g.label})")


def check_reverse_order(f1: GridFunction, f2: GridFunction, dual_axes: AxesLike,
                        tol: Optional[float] = None) -> VerificationReport:
    """Order reversal: f2 <= f1 nodewise implies conj(f2) >= conj(f1) nodewise."""
    tol = tolerance('reverse_order') if tol is None else tol
    if f1.shape != f2.shape or not all(np.array_equal(a, b) for a, b in zip(f1.axes, f2.axes)):
        raise DimensionError("reverse-order check needs identical primal axes")
    tracker = ViolationTracker("reverse-order", tol)
    if np.all(f2.values <= f1.values):
        lower, upper, direction = f2, f1, "f2<=f1"
    elif np.all(f1.values <= f2.values):
        lower, upper, direction = f1, f2, "f1<=f2"
    else:
        tracker.skip("neither function is below the other at every node")
        return tracker.report(premise="none")
    conj_lower = conjugate_grid(lower, dual_axes).flat_values()
    conj_upper = conjugate_grid(upper, dual_axes).flat_values()
    dual = _dual_nodes(dual_arrays(dual_axes))
    gap = conj_upper - conj_lower
    for i in range(gap.shape[0]):
        violation = max(0.0, float(gap[i]))
        tracker.record(violation, violation > tol, eta=dual[i],
                       conj_lower=conj_lower[i], conj_upper=conj_upper[i])
    return tracker.report(premise=direction)
