"""Sampled functions on rectangular 1-D / 2-D grids."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from glft.funcspace.domain import OpenBox
from glft.funcspace.function import ConvexFunction
from glft.utils.exceptions import DimensionError, ParameterError, UsageError


@dataclass(frozen=True)
class AxisSpec:
    """`lo:hi:n`: n equispaced samples from lo to hi inclusive."""

    lo: float
    hi: float
    n: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ParameterError("grid bounds must be finite")
        if not self.lo < self.hi:
            raise ParameterError(f"grid needs lo < hi, got {self.lo}:{self.hi}")
        if self.n < 2:
            raise ParameterError(f"grid needs at least 2 points per axis, got {self.n}")

    def samples(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)

    def __str__(self) -> str:
        return f"{self.lo!r}:{self.hi!r}:{self.n}"


def parse_grid_spec(text: str) -> List[AxisSpec]:
    """Parse `lo:hi:n[,lo:hi:n]`."""
    axes = []
    for chunk in text.split(','):
        parts = chunk.strip().split(':')
        if len(parts) != 3:
            raise UsageError(f"grid axis must be lo:hi:n, got {chunk!r}")
        try:
            axes.append(AxisSpec(float(parts[0]), float(parts[1]), int(parts[2])))
        except ValueError as e:
            raise UsageError(f"bad grid axis {chunk!r}: {e}") from e
    if not 1 <= len(axes) <= 2:
        raise UsageError("grids have one or two axes")
    return axes


def _check_axes(axes: Sequence[np.ndarray], min_samples: int = 2) -> Tuple[np.ndarray, ...]:
    checked = []
    for axis in axes:
        axis = np.asarray(axis, dtype=float)
        if axis.ndim != 1 or axis.shape[0] < min_samples:
            raise ParameterError(f"each axis needs >= {min_samples} samples")
        if not np.all(np.isfinite(axis)) or np.any(np.diff(axis) <= 0):
            raise ParameterError("axis samples must be finite and strictly increasing")
        checked.append(axis)
    if not 1 <= len(checked) <= 2:
        raise DimensionError("grids are 1-D or 2-D")
    return tuple(checked)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Values of a function on the nodes of a rectangular grid.

    `values` has shape (len(axes[0]),) or (len(axes[0]), len(axes[1])).
    A conjugate grid records in `argmax` the flat primal node index (C order,
    i.e. lexicographic in theta) that attains each dual value.
    """

    axes: Tuple[np.ndarray, ...]
    values: np.ndarray
    argmax: Optional[np.ndarray] = None
    label: str = "grid"

    def __post_init__(self) -> None:
        axes = _check_axes(self.axes)
        values = np.asarray(self.values, dtype=float)
        expected = tuple(a.shape[0] for a in axes)
        if values.shape != expected:
            raise DimensionError(f"values shape {values.shape} does not match axes {expected}")
        if np.any(np.isnan(values)):
            raise ParameterError("grid values must be extended reals (no NaN)")
        if not np.any(np.isfinite(values)):
            raise ParameterError("grid function needs at least one finite value")
        object.__setattr__(self, 'axes', axes)
        object.__setattr__(self, 'values', values)

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.values.shape

    def nodes(self) -> np.ndarray:
        """All nodes as an (N, m) array in lexicographic order."""
        mesh = np.meshgrid(*self.axes, indexing='ij')
        return np.stack([g.ravel() for g in mesh], axis=1)

    def flat_values(self) -> np.ndarray:
        return self.values.ravel()

    def node(self, flat_index: int) -> np.ndarray:
        index = np.unravel_index(int(flat_index), self.shape)
        return np.array([axis[i] for axis, i in zip(self.axes, index)])

    def as_function(self, label: Optional[str] = None) -> ConvexFunction:
        """Piecewise-linear interpolant; +inf outside the sampled box."""
        lower = np.array([a[0] for a in self.axes])
        upper = np.array([a[-1] for a in self.axes])
        domain = OpenBox(lower - 1e-12 * np.maximum(1.0, np.abs(lower)),
                         upper + 1e-12 * np.maximum(1.0, np.abs(upper)))
        interpolator = RegularGridInterpolator(self.axes, self.values, method='linear',
                                               bounds_error=False, fill_value=np.inf)

        def evaluator(theta: np.ndarray) -> float:
            clipped = np.clip(theta, lower, upper)
            value = float(interpolator(clipped[None, :])[0])
            return np.inf if math.isnan(value) else value

        return ConvexFunction(label=label or self.label, domain=domain,
                              evaluator=evaluator, family="grid")


def sample(f: ConvexFunction, axes: Sequence[AxisSpec]) -> GridFunction:
    """Evaluate f at every node; +inf is recorded outside the domain."""
    if len(axes) != f.dim:
        raise DimensionError(f"{f.label} is {f.dim}-D but the grid has {len(axes)} axes")
    if f.dim > 2:
        raise DimensionError("grids are capped at two dimensions")
    arrays = tuple(spec.samples() for spec in axes)
    return sample_on(f, arrays)


def sample_on(f: ConvexFunction, arrays: Sequence[np.ndarray]) -> GridFunction:
    arrays = _check_axes(arrays)
    shape = tuple(a.shape[0] for a in arrays)
    values = np.empty(shape)
    for index in np.ndindex(*shape):
        values[index] = f.value([arrays[k][index[k]] for k in range(len(arrays))])
    return GridFunction(arrays, values, label=f.label)


