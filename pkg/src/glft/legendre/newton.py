"""Conjugate values by inverting the gradient map.

F*(eta) = <theta, eta> - F(theta) where grad F(theta) = eta. The equation
is solved by damped Newton; in 1-D a bracketing bisection takes over when
Newton stalls or meets a degenerate Hessian.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from glft.core.config import get_config
from glft.funcspace.function import ConvexFunction, gradient_of, hessian_of
from glft.utils.exceptions import (
    ConvergenceError,
    DomainError,
    HessianNotSPDError,
    OutOfRangeError,
)
from glft.utils.logging import log_debug


@dataclass(frozen=True)
class NewtonResult:
    value: float
    argmax: np.ndarray
    iterations: int
    residual: float
    method: str = "newton"


@dataclass(frozen=True)
class NewtonSettings:
    tol: float
    max_iter: int
    max_backtracks: int
    divergence_bound: float

    @classmethod
    def from_config(cls, tol: Optional[float] = None,
                    max_iter: Optional[int] = None) -> 'NewtonSettings':
        config = get_config()
        return cls(
            tol=float(tol if tol is not None else config.get_with_default('newton.tol')),
            max_iter=int(max_iter if max_iter is not None else config.get_with_default('newton.max_iter')),
            max_backtracks=int(config.get_with_default('newton.max_backtracks')),
            divergence_bound=float(config.get_with_default('newton.divergence_bound')),
        )


def _residual(f: ConvexFunction, theta: np.ndarray, eta: np.ndarray) -> Optional[np.ndarray]:
    """grad F(theta) - eta, or None when theta is unusable."""
    if not f.domain.contains(theta):
        return None
    try:
        grad, _ = gradient_of(f, theta)
    except DomainError:
        return None
    if not np.all(np.isfinite(grad)):
        return None
    return grad - eta


def _spd_solve(hess: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    try:
        chol = np.linalg.cholesky(hess)
    except np.linalg.LinAlgError as e:
        raise HessianNotSPDError("Hessian is not positive definite at the iterate") from e
    y = np.linalg.solve(chol, rhs)
    return np.linalg.solve(chol.T, y)


def _check_bound(theta: np.ndarray, settings: NewtonSettings) -> None:
    if float(np.max(np.abs(theta))) > settings.divergence_bound:
        raise OutOfRangeError(
            f"iterates left every compact set (|theta| > {settings.divergence_bound:g}); "
            "eta is outside the gradient range")


def _finish(f: ConvexFunction, theta: np.ndarray, eta: np.ndarray, iterations: int,
            residual: float, method: str) -> NewtonResult:
    value = float(theta @ eta) - f.value(theta)
    return NewtonResult(value=value, argmax=theta, iterations=iterations,
                        residual=residual, method=method)


def _bracket_walk(f: ConvexFunction, start: float, direction: float, eta: float,
                  settings: NewtonSettings) -> float:
    """Walk from `start` until the residual changes sign, staying in the domain."""
    x = start
    step = 1.0
    for _ in range(4000):
        candidate = np.array([x + direction * step])
        res = _residual(f, candidate, np.array([eta]))
        if res is None:
            step *= 0.5
            if step < 1e-300 or x + direction * step == x:
                raise OutOfRangeError(f"gradient range ends at the domain boundary before {eta}")
            continue
        x = float(candidate[0])
        if direction * res[0] >= 0.0:
            return x
        if abs(x) > settings.divergence_bound:
            raise OutOfRangeError(f"no root of grad F = {eta} within |theta| <= "
                                  f"{settings.divergence_bound:g}")
        step *= 2.0
    raise ConvergenceError("bracket search exhausted its budget")


def _bisect_1d(f: ConvexFunction, eta: np.ndarray, theta0: np.ndarray,
               settings: NewtonSettings, tol: float) -> NewtonResult:
    target = float(eta[0])
    res0 = _residual(f, theta0, eta)
    if res0 is None:
        theta0 = f.domain.interior_point()
        res0 = _residual(f, theta0, eta)
        if res0 is None:
            raise DomainError(f"{f.label}: no usable starting point for bisection")
    x0 = float(theta0[0])
    if abs(res0[0]) <= tol:
        return _finish(f, theta0, eta, 0, abs(float(res0[0])), "bisection")
    if res0[0] < 0:
        lo, hi = x0, _bracket_walk(f, x0, 1.0, target, settings)
    else:
        lo, hi = _bracket_walk(f, x0, -1.0, target, settings), x0
    best, best_res = x0, abs(float(res0[0]))
    for iteration in range(1, 2000):
        mid = 0.5 * (lo + hi)
        res = _residual(f, np.array([mid]), eta)
        if res is None:
            raise DomainError(f"{f.label}: bisection midpoint {mid} left the domain")
        if abs(res[0]) < best_res:
            best, best_res = mid, abs(float(res[0]))
        if abs(res[0]) <= tol or mid in (lo, hi):
            return _finish(f, np.array([best]), eta, iteration, best_res, "bisection")
        if res[0] < 0:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError("bisection did not converge")


def conjugate_newton(f: ConvexFunction, eta, theta0=None, tol: Optional[float] = None,
                     max_iter: Optional[int] = None) -> NewtonResult:
    """Solve grad F(theta) = eta and return F*(eta) with its argmax.

    Convergence is declared when ||grad F(theta) - eta|| <= tol * max(1, ||eta||).
    """
    settings = NewtonSettings.from_config(tol, max_iter)
    eta = f.point(eta)
    theta = f.point(theta0) if theta0 is not None else f.domain.interior_point()
    scaled_tol = settings.tol * max(1.0, float(np.linalg.norm(eta)))
    one_d = f.dim == 1

    residual = _residual(f, theta, eta)
    if residual is None:
        raise DomainError(f"{f.label}: starting point {theta} is not usable")

    for iteration in range(settings.max_iter):
        norm = float(np.linalg.norm(residual))
        if norm <= scaled_tol:
            return _finish(f, theta, eta, iteration, norm, "newton")
        _check_bound(theta, settings)
        try:
            hess, _ = hessian_of(f, theta)
            direction = _spd_solve(hess, -residual)
        except (HessianNotSPDError, DomainError) as e:
            if one_d:
                log_debug(f"newton: {e}; switching to bisection")
                return _bisect_1d(f, eta, theta, settings, scaled_tol)
            raise HessianNotSPDError(f"{f.label}: {e}") from e

        step = 1.0
        accepted = False
        for _ in range(settings.max_backtracks):
            candidate = theta + step * direction
            cand_res = _residual(f, candidate, eta)
            if cand_res is not None and float(np.linalg.norm(cand_res)) < norm:
                theta, residual = candidate, cand_res
                accepted = True
                break
            step *= 0.5
        if not accepted:
            if norm <= math.sqrt(scaled_tol) * 1e-3:
                # stagnated at floating-point resolution
                return _finish(f, theta, eta, iteration, norm, "newton")
            if one_d:
                log_debug("newton: line search failed; switching to bisection")
                return _bisect_1d(f, eta, theta, settings, scaled_tol)
            raise ConvergenceError(f"{f.label}: line search failed at residual {norm:.3e}")

    norm = float(np.linalg.norm(residual))
    if norm <= scaled_tol:
        return _finish(f, theta, eta, settings.max_iter, norm, "newton")
    _check_bound(theta, settings)
    if one_d:
        return _bisect_1d(f, eta, theta, settings, scaled_tol)
    raise ConvergenceError(f"{f.label}: no convergence in {settings.max_iter} iterations "
                           f"(residual {norm:.3e})")
