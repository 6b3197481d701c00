"""Deformation parameters P = (lambda, A, b, c, d) and the diamond map."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from scipy.linalg import lu_factor, lu_solve

from glft.utils.exceptions import DimensionError, ParameterError, UsageError

# Relative singularity cliff: |det A| must exceed this times ||A||_inf^m.
SINGULARITY_THRESHOLD = 1e-12


def _check_invertible(matrix: np.ndarray, name: str) -> Tuple[np.ndarray, np.ndarray]:
    m = matrix.shape[0]
    scale = float(np.linalg.norm(matrix, ord=np.inf))
    if scale == 0.0:
        raise ParameterError(f"{name} is the zero matrix")
    lu, piv = lu_factor(matrix, check_finite=True)
    abs_det = float(np.prod(np.abs(np.diag(lu))))
    if not abs_det > SINGULARITY_THRESHOLD * scale ** m:
        raise ParameterError(f"{name} is numerically singular (|det| = {abs_det:.3e})")
    return lu, piv


def _coerce(lam, matrix, u, v, w, names) -> Tuple[float, np.ndarray, np.ndarray, np.ndarray, float]:
    lam = float(lam)
    if not (np.isfinite(lam) and lam > 0):
        raise ParameterError(f"{names[0]} must be > 0, got {lam}")
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"{names[1]} must be square, got shape {matrix.shape}")
    m = matrix.shape[0]
    u = np.atleast_1d(np.asarray(u, dtype=float))
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if u.shape != (m,) or v.shape != (m,):
        raise DimensionError(f"{names[2]} and {names[3]} must have length {m}")
    w = float(w)
    for arr in (matrix, u, v, np.array([w])):
        if not np.all(np.isfinite(arr)):
            raise ParameterError("deformation parameters must be finite")
    return lam, matrix, u, v, w


@dataclass(frozen=True, eq=False)
class DeformParams:
    """Primal-side parameters of F_P(theta) = lam F(A theta + b) + <theta, c> + d."""

    lam: float
    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: float

    def __post_init__(self) -> None:
        lam, A, b, c, d = _coerce(self.lam, self.A, self.b, self.c, self.d,
                                  ("lambda", "A", "b", "c"))
        for name, value in (('lam', lam), ('A', A), ('b', b), ('c', c), ('d', d)):
            object.__setattr__(self, name, value)
        _check_invertible(A, "A")

    @classmethod
    def identity(cls, m: int) -> 'DeformParams':
        return cls(1.0, np.eye(m), np.zeros(m), np.zeros(m), 0.0)

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    @cached_property
    def _lu(self):
        return lu_factor(self.A)

    def solve(self, v: np.ndarray) -> np.ndarray:
        """A^{-1} v."""
        return lu_solve(self._lu, np.asarray(v, dtype=float))

    def solve_transpose(self, v: np.ndarray) -> np.ndarray:
        """A^{-T} v."""
        return lu_solve(self._lu, np.asarray(v, dtype=float), trans=1)

    @cached_property
    def A_inv(self) -> np.ndarray:
        return lu_solve(self._lu, np.eye(self.dim))

    def forward(self, theta: np.ndarray) -> np.ndarray:
        """A theta + b."""
        return self.A @ theta + self.b

    def components(self) -> Dict[str, Any]:
        return {'lambda': self.lam, 'A': self.A, 'b': self.b, 'c': self.c, 'd': self.d}

    def to_dict(self) -> Dict[str, Any]:
        return {
            'lambda': self.lam,
            'A': self.A.tolist(),
            'b': self.b.tolist(),
            'c': self.c.tolist(),
            'd': self.d,
        }

    def max_relative_error(self, other: 'DeformParams') -> float:
        """Largest componentwise |x - y| / max(1, |y|) against `other`."""
        worst = 0.0
        mine, theirs = self.components(), other.components()
        for key in mine:
            x = np.atleast_1d(np.asarray(mine[key], dtype=float)).ravel()
            y = np.atleast_1d(np.asarray(theirs[key], dtype=float)).ravel()
            if x.shape != y.shape:
                return float('inf')
            worst = max(worst, float(np.max(np.abs(x - y) / np.maximum(1.0, np.abs(y)))))
        return worst

    def is_identity(self) -> bool:
        return (self.lam == 1.0 and np.array_equal(self.A, np.eye(self.dim))
                and not np.any(self.b) and not np.any(self.c) and self.d == 0.0)

    def as_gen(self) -> 'GenParams':
        """Same tuple read as dual-side parameters (lam, E, f, g, h)."""
        return GenParams(self.lam, self.A, self.b, self.c, self.d)

    @classmethod
    def from_gen(cls, gen: 'GenParams') -> 'DeformParams':
        return cls(gen.lam, gen.E, gen.f, gen.g, gen.h)

    def __repr__(self) -> str:
        return f"DeformParams({self.to_dict()})"


@dataclass(frozen=True, eq=False)
class GenParams:
    """Dual-side parameters of (T F)(eta) = lam (L F)(E eta + f) + <eta, g> + h."""

    lam: float
    E: np.ndarray
    f: np.ndarray
    g: np.ndarray
    h: float

    def __post_init__(self) -> None:
        lam, E, f, g, h = _coerce(self.lam, self.E, self.f, self.g, self.h,
                                  ("lambda", "E", "f", "g"))
        for name, value in (('lam', lam), ('E', E), ('f', f), ('g', g), ('h', h)):
            object.__setattr__(self, name, value)
        _check_invertible(E, "E")

    @classmethod
    def identity(cls, m: int) -> 'GenParams':
        return cls(1.0, np.eye(m), np.zeros(m), np.zeros(m), 0.0)

    @classmethod
    def from_deform(cls, params: DeformParams) -> 'GenParams':
        return params.as_gen()

    @property
    def dim(self) -> int:
        return self.E.shape[0]

    def inner_point(self, eta: np.ndarray) -> np.ndarray:
        """E eta + f."""
        return self.E @ eta + self.f

    def to_dict(self) -> Dict[str, Any]:
        return DeformParams.from_gen(self).to_dict()


def diamond(P: DeformParams) -> DeformParams:
    """P -> P' with L(F_P) = (L F)_{P'}.

    P' = (lam, (1/lam) A^{-T}, -(1/lam) A^{-T} c, -A^{-1} b, <A^{-1} b, c> - d).
    For symmetric A this is the familiar (lam, A^{-1}/lam, ...) form.
    Applying it twice returns P.
    """
    A_inv_b = P.solve(P.b)
    A_inv_T = P.A_inv.T
    return DeformParams(
        lam=P.lam,
        A=A_inv_T / P.lam,
        b=-P.solve_transpose(P.c) / P.lam,
        c=-A_inv_b,
        d=float(A_inv_b @ P.c) - P.d,
    )


class ParamsLiteral(BaseModel):
    """JSON literal {"lambda", "A" (row-major), "b", "c", "d"}."""
    model_config = ConfigDict(extra='forbid', populate_by_name=True)

    lam: float = Field(alias='lambda', gt=0)
    A: List[List[float]]
    b: List[float]
    c: List[float]
    d: float = 0.0


def params_from_literal(data: Any) -> DeformParams:
    """Validate a decoded JSON literal into DeformParams."""
    if isinstance(data, DeformParams):
        return data
    try:
        literal = ParamsLiteral.model_validate(data)
    except ValidationError as e:
        raise UsageError(f"invalid P literal: {e}") from e
    return DeformParams(literal.lam, np.array(literal.A, dtype=float),
                        np.array(literal.b, dtype=float), np.array(literal.c, dtype=float),
                        literal.d)
