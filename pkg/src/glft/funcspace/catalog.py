"""Closed-form catalog of convex functions.

Entries are addressed by name plus a parameter map. Every builder
returns a ConvexFunction whose `family` and `params` let the
closed-form conjugation rules recognise it again.
"""
from __future__ import annotations

import math
from typing import Any, Callable, Dict, List, Mapping, Optional

import numpy as np
from scipy.special import xlogy

from glft.core.config import get_config
from glft.funcspace.domain import OpenBall, OpenBox, Reals, Singleton, positive_orthant
from glft.funcspace.function import ConvexFunction
from glft.utils.exceptions import CatalogError, DomainError, ParameterError
from glft.utils.parsing import parse_function_spec

Builder = Callable[[Mapping[str, Any]], ConvexFunction]

_REGISTRY: Dict[str, Builder] = {}


def register(name: str) -> Callable[[Builder], Builder]:
    def decorator(builder: Builder) -> Builder:
        _REGISTRY[name] = builder
        return builder
    return decorator


def catalog_names() -> List[str]:
    return sorted(_REGISTRY)


# Parameter coercion

def _scalar(params: Mapping[str, Any], key: str, default: Optional[float] = None) -> float:
    if key not in params:
        if default is None:
            raise ParameterError(f"missing parameter '{key}'")
        return float(default)
    value = params[key]
    if isinstance(value, (list, tuple)):
        if len(value) != 1:
            raise ParameterError(f"parameter '{key}' must be a scalar")
        value = value[0]
    try:
        result = float(value)
    except (TypeError, ValueError) as e:
        raise ParameterError(f"parameter '{key}' must be numeric, got {value!r}") from e
    if not math.isfinite(result):
        raise ParameterError(f"parameter '{key}' must be finite")
    return result


def _dimension(params: Mapping[str, Any], default: int = 1) -> int:
    m = params.get('m', default)
    if isinstance(m, bool) or not isinstance(m, (int, float)) or int(m) != m or m < 1:
        raise ParameterError(f"dimension m must be a positive integer, got {m!r}")
    return int(m)


def _vector(params: Mapping[str, Any], key: str, m: Optional[int] = None,
            default: Optional[np.ndarray] = None) -> np.ndarray:
    if key not in params:
        if default is None:
            raise ParameterError(f"missing parameter '{key}'")
        return np.asarray(default, dtype=float)
    try:
        vector = np.atleast_1d(np.asarray(params[key], dtype=float))
    except (TypeError, ValueError) as e:
        raise ParameterError(f"parameter '{key}' must be a numeric vector") from e
    if vector.ndim != 1 or not np.all(np.isfinite(vector)):
        raise ParameterError(f"parameter '{key}' must be a finite vector")
    if m is not None and vector.shape[0] != m:
        raise ParameterError(f"parameter '{key}' must have length {m}")
    return vector


def _matrix(params: Mapping[str, Any], key: str) -> np.ndarray:
    try:
        matrix = np.atleast_2d(np.asarray(params[key], dtype=float))
    except (TypeError, ValueError) as e:
        raise ParameterError(f"parameter '{key}' must be a numeric matrix") from e
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ParameterError(f"parameter '{key}' must be a square matrix")
    if not np.all(np.isfinite(matrix)):
        raise ParameterError(f"parameter '{key}' must be finite")
    return matrix


def check_spd(Q: np.ndarray, name: str = "Q") -> np.ndarray:
    """Symmetric positive definite check via Cholesky."""
    if not np.allclose(Q, Q.T, rtol=1e-12, atol=1e-12):
        raise ParameterError(f"{name} must be symmetric")
    try:
        np.linalg.cholesky(Q)
    except np.linalg.LinAlgError as e:
        raise ParameterError(f"{name} must be positive definite") from e
    return 0.5 * (Q + Q.T)


def _fmt(params: Mapping[str, Any]) -> str:
    if not params:
        return ""
    body = ",".join(f"{k}={np.asarray(v).tolist() if isinstance(v, np.ndarray) else v}"
                    for k, v in params.items())
    return "{" + body + "}"


# Entries

@register("affine")
def affine(params: Mapping[str, Any]) -> ConvexFunction:
    """<a, theta> + b on R^m."""
    a = _vector(params, 'a')
    b = _scalar(params, 'b', 0.0)
    m = a.shape[0]
    return ConvexFunction(
        label=f"affine{_fmt({'a': a, 'b': b})}",
        domain=Reals(m),
        evaluator=lambda t: float(a @ t + b),
        gradient=lambda t: a.copy(),
        hessian=lambda t: np.zeros((m, m)),
        family="affine",
        params={'a': a, 'b': b},
    )


@register("indicator-point")
def indicator_point(params: Mapping[str, Any]) -> ConvexFunction:
    """v on {a}, +inf elsewhere."""
    a = _vector(params, 'a')
    v = _scalar(params, 'v', 0.0)
    return ConvexFunction(
        label=f"indicator-point{_fmt({'a': a, 'v': v})}",
        domain=Singleton(a),
        evaluator=lambda t: v,
        family="indicator-point",
        params={'a': a, 'v': v},
    )


@register("exp")
def exp_entry(params: Mapping[str, Any]) -> ConvexFunction:
    """sum_i exp(theta_i)."""
    m = _dimension(params)
    return ConvexFunction(
        label="exp" if m == 1 else f"exp{{m={m}}}",
        domain=Reals(m),
        evaluator=lambda t: float(np.sum(np.exp(t))),
        gradient=lambda t: np.exp(t),
        hessian=lambda t: np.diag(np.exp(t)),
        family="exp",
        params={'m': m},
        strictly_convex=True, legendre_type=True, smooth=True,
    )


@register("shannon")
def shannon(params: Mapping[str, Any]) -> ConvexFunction:
    """sum_i eta_i log eta_i - eta_i on eta >= 0 (0 log 0 = 0)."""
    m = _dimension(params)

    def closure(t: np.ndarray) -> Optional[float]:
        if np.all(t >= 0):
            return float(np.sum(xlogy(t, t) - t))
        return None

    return ConvexFunction(
        label="shannon" if m == 1 else f"shannon{{m={m}}}",
        domain=positive_orthant(m),
        evaluator=lambda t: float(np.sum(xlogy(t, t) - t)),
        gradient=lambda t: np.log(t),
        hessian=lambda t: np.diag(1.0 / t),
        boundary_value=closure,
        family="shannon",
        params={'m': m},
        strictly_convex=True, legendre_type=True, smooth=True,
    )


def _power_norm_gradient(p: float):
    def gradient(t: np.ndarray) -> np.ndarray:
        norm = float(np.linalg.norm(t))
        if norm == 0.0:
            return np.zeros_like(t)
        return norm ** (p - 2.0) * t
    return gradient


def _power_norm_hessian(p: float):
    def hessian(t: np.ndarray) -> np.ndarray:
        m = t.shape[0]
        norm = float(np.linalg.norm(t))
        if norm == 0.0:
            if p == 2.0:
                return np.eye(m)
            if p > 2.0:
                return np.zeros((m, m))
            raise DomainError(f"Hessian of the {p}-norm power is unbounded at the origin")
        u = t / norm
        return norm ** (p - 2.0) * (np.eye(m) + (p - 2.0) * np.outer(u, u))
    return hessian


@register("power-norm")
def power_norm(params: Mapping[str, Any]) -> ConvexFunction:
    """(1/p) ||theta||^p with the Euclidean norm, p >= 1."""
    p = _scalar(params, 'p', 2.0)
    if p < 1.0:
        raise ParameterError(f"power-norm needs p >= 1, got {p}")
    m = _dimension(params)
    smooth = p > 1.0
    return ConvexFunction(
        label=f"power-norm{{p={p:g}}}" if m == 1 else f"power-norm{{p={p:g},m={m}}}",
        domain=Reals(m),
        evaluator=lambda t: float(np.linalg.norm(t) ** p / p),
        gradient=_power_norm_gradient(p) if smooth else None,
        hessian=_power_norm_hessian(p) if smooth else None,
        family="power-norm",
        params={'p': p, 'm': m},
        strictly_convex=smooth, legendre_type=smooth, smooth=smooth,
    )


@register("indicator-ball")
def indicator_ball(params: Mapping[str, Any]) -> ConvexFunction:
    """0 on the closed unit ball, +inf outside."""
    m = _dimension(params)
    center = np.zeros(m)

    def closure(t: np.ndarray) -> Optional[float]:
        return 0.0 if np.linalg.norm(t) <= 1.0 else None

    return ConvexFunction(
        label="indicator-ball" if m == 1 else f"indicator-ball{{m={m}}}",
        domain=OpenBall(center, 1.0),
        evaluator=lambda t: 0.0,
        gradient=lambda t: np.zeros_like(t),
        boundary_value=closure,
        family="indicator-ball",
        params={'m': m},
    )


def _restriction(params: Mapping[str, Any]) -> str:
    restrict = str(params.get('restrict', 'none'))
    if restrict not in ('none', 'positive'):
        raise ParameterError(f"restrict must be 'none' or 'positive', got {restrict!r}")
    return restrict


@register("exp-abs")
def exp_abs(params: Mapping[str, Any]) -> ConvexFunction:
    """exp(|theta|) - |theta| - 1 in 1-D; `restrict=positive` keeps theta > 0."""
    restrict = _restriction(params)

    def evaluator(t: np.ndarray) -> float:
        x = abs(float(t[0]))
        return math.expm1(x) - x

    def gradient(t: np.ndarray) -> np.ndarray:
        x = float(t[0])
        return np.array([math.copysign(math.expm1(abs(x)), x)])

    def hessian(t: np.ndarray) -> np.ndarray:
        return np.array([[math.exp(abs(float(t[0])))]])

    if restrict == 'positive':
        return ConvexFunction(
            label="exp-abs{restrict=positive}",
            domain=positive_orthant(1),
            evaluator=evaluator, gradient=gradient, hessian=hessian,
            boundary_value=lambda t: 0.0 if float(t[0]) == 0.0 else None,
            family="exp-abs", params={'restrict': restrict},
            strictly_convex=True, legendre_type=True, smooth=True,
        )
    return ConvexFunction(
        label="exp-abs",
        domain=Reals(1),
        evaluator=evaluator, gradient=gradient, hessian=hessian,
        family="exp-abs", params={'restrict': restrict},
        strictly_convex=True, legendre_type=True, smooth=True,
    )


@register("exp-abs-conjugate")
def exp_abs_conjugate(params: Mapping[str, Any]) -> ConvexFunction:
    """(1 + |eta|) log(1 + |eta|) - |eta|.

    With `restrict=positive` this is the conjugate of the restricted
    exp-abs: the same formula for eta > 0 and 0 for eta <= 0.
    """
    restrict = _restriction(params)
    positive_only = restrict == 'positive'

    def evaluator(t: np.ndarray) -> float:
        x = float(t[0])
        if positive_only and x <= 0.0:
            return 0.0
        x = abs(x)
        return (1.0 + x) * math.log1p(x) - x

    def gradient(t: np.ndarray) -> np.ndarray:
        x = float(t[0])
        if positive_only and x <= 0.0:
            return np.array([0.0])
        return np.array([math.copysign(math.log1p(abs(x)), x)])

    def hessian(t: np.ndarray) -> np.ndarray:
        x = float(t[0])
        if positive_only and x <= 0.0:
            return np.array([[0.0]])
        return np.array([[1.0 / (1.0 + abs(x))]])

    return ConvexFunction(
        label="exp-abs-conjugate" + ("{restrict=positive}" if positive_only else ""),
        domain=Reals(1),
        evaluator=evaluator, gradient=gradient, hessian=hessian,
        family="exp-abs-conjugate", params={'restrict': restrict},
        strictly_convex=not positive_only, legendre_type=not positive_only,
        smooth=not positive_only,
    )


@register("quadratic-form")
def quadratic_form(params: Mapping[str, Any]) -> ConvexFunction:
    """1/2 theta^T Q theta + <r, theta> + s with Q symmetric positive definite."""
    if 'Q' in params:
        Q = check_spd(_matrix(params, 'Q'))
        m = Q.shape[0]
    else:
        m = _dimension(params)
        Q = np.eye(m)
    r = _vector(params, 'r', m, default=np.zeros(m))
    s = _scalar(params, 's', 0.0)
    if m == 1 and Q[0, 0] == 1.0 and not np.any(r) and s == 0.0:
        label = "quadratic"
    else:
        label = f"quadratic-form{_fmt({'Q': Q, 'r': r, 's': s})}"
    return ConvexFunction(
        label=label,
        domain=Reals(m),
        evaluator=lambda t: float(0.5 * t @ Q @ t + r @ t + s),
        gradient=lambda t: Q @ t + r,
        hessian=lambda t: Q.copy(),
        family="quadratic-form",
        params={'Q': Q, 'r': r, 's': s},
        strictly_convex=True, legendre_type=True, smooth=True,
    )


@register("rockafellar-2d")
def rockafellar_2d(params: Mapping[str, Any]) -> ConvexFunction:
    """1/4 (theta1^2 / theta2 + theta1^2 + theta2^2) on R x (0, inf)."""

    def evaluator(t: np.ndarray) -> float:
        t1, t2 = float(t[0]), float(t[1])
        return 0.25 * (t1 * t1 / t2 + t1 * t1 + t2 * t2)

    def gradient(t: np.ndarray) -> np.ndarray:
        t1, t2 = float(t[0]), float(t[1])
        return np.array([0.25 * (2.0 * t1 / t2 + 2.0 * t1),
                         0.25 * (-t1 * t1 / (t2 * t2) + 2.0 * t2)])

    def hessian(t: np.ndarray) -> np.ndarray:
        t1, t2 = float(t[0]), float(t[1])
        off = -0.5 * t1 / (t2 * t2)
        return np.array([[0.5 * (1.0 / t2 + 1.0), off],
                         [off, 0.5 * t1 * t1 / t2 ** 3 + 0.5]])

    return ConvexFunction(
        label="rockafellar-2d",
        domain=OpenBox(np.array([-np.inf, 0.0]), np.array([np.inf, np.inf])),
        evaluator=evaluator, gradient=gradient, hessian=hessian,
        boundary_value=lambda t: 0.0 if float(t[0]) == 0.0 and float(t[1]) == 0.0 else None,
        family="rockafellar-2d", params={},
        strictly_convex=True, smooth=True,
    )


@register("neg-log")
def neg_log(params: Mapping[str, Any]) -> ConvexFunction:
    """-sum_i log theta_i on theta > 0."""
    m = _dimension(params)
    return ConvexFunction(
        label="neg-log" if m == 1 else f"neg-log{{m={m}}}",
        domain=positive_orthant(m),
        evaluator=lambda t: float(-np.sum(np.log(t))),
        gradient=lambda t: -1.0 / t,
        hessian=lambda t: np.diag(1.0 / t ** 2),
        family="neg-log", params={'m': m},
        strictly_convex=True, legendre_type=True, smooth=True,
    )


@register("neg-log-conjugate")
def neg_log_conjugate(params: Mapping[str, Any]) -> ConvexFunction:
    """sum_i (-1 - log(-eta_i)) on eta < 0."""
    m = _dimension(params)
    return ConvexFunction(
        label="neg-log-conjugate" if m == 1 else f"neg-log-conjugate{{m={m}}}",
        domain=positive_orthant(m, sign=-1.0),
        evaluator=lambda t: float(np.sum(-1.0 - np.log(-t))),
        gradient=lambda t: -1.0 / t,
        hessian=lambda t: np.diag(1.0 / t ** 2),
        family="neg-log-conjugate", params={'m': m},
        strictly_convex=True, legendre_type=True, smooth=True,
    )


def catalog_lookup(name: str, params: Optional[Mapping[str, Any]] = None) -> ConvexFunction:
    """Build a catalog entry; aliases from the config are resolved first."""
    params = dict(params or {})
    alias = get_config().alias(name)
    if alias is not None and name not in _REGISTRY:
        alias_name, alias_params = parse_function_spec(alias)
        alias_params.update(params)
        name, params = alias_name, alias_params
    builder = _REGISTRY.get(name)
    if builder is None:
        raise CatalogError(f"unknown catalog entry '{name}'; known: {', '.join(catalog_names())}")
    return builder(params)


def lookup_spec(spec: str) -> ConvexFunction:
    """Build a function from a ``name{key=value,...}`` spec string."""
    name, params = parse_function_spec(spec)
    return catalog_lookup(name, params)
