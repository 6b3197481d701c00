"""The affine deformation F -> F_P and the gradient of its conjugate."""
from __future__ import annotations

from typing import Callable, Optional, Union

import numpy as np

from glft.deform.params import DeformParams
from glft.funcspace import catalog
from glft.funcspace.domain import AffinePreimage, Reals
from glft.funcspace.function import ConvexFunction
from glft.utils.exceptions import DimensionError, DomainError

GradientLike = Union[ConvexFunction, Callable[[np.ndarray], np.ndarray]]


def _canonical(f: ConvexFunction, P: DeformParams) -> Optional[ConvexFunction]:
    """Families closed under deformation come back as catalog entries."""
    lam, A, b, c, d = P.lam, P.A, P.b, P.c, P.d
    if f.family == "affine":
        a, b0 = f.params['a'], f.params['b']
        return catalog.affine({'a': lam * A.T @ a + c, 'b': lam * (a @ b + b0) + d})
    if f.family == "quadratic-form":
        Q, r, s = f.params['Q'], f.params['r'], f.params['s']
        Q_new = lam * A.T @ Q @ A
        return catalog.quadratic_form({
            'Q': 0.5 * (Q_new + Q_new.T),
            'r': lam * A.T @ (Q @ b + r) + c,
            's': lam * (0.5 * b @ Q @ b + r @ b + s) + d,
        })
    if f.family == "indicator-point":
        point = P.solve(f.params['a'] - b)
        return catalog.indicator_point({'a': point, 'v': lam * f.params['v'] + point @ c + d})
    return None


def deform(f: ConvexFunction, P: DeformParams) -> ConvexFunction:
    """F_P(theta) = lam F(A theta + b) + <theta, c> + d.

    The domain is the affine preimage {theta : A theta + b in dom F}; the
    gradient is lam A^T grad F(A theta + b) + c when F has one.
    """
    if P.dim != f.dim:
        raise DimensionError(f"{f.label} is {f.dim}-D but P is {P.dim}-D")
    canonical = _canonical(f, P)
    if canonical is not None:
        return canonical

    lam, A, b, c, d = P.lam, P.A, P.b, P.c, P.d
    domain = Reals(f.dim) if isinstance(f.domain, Reals) else AffinePreimage(f.domain, A, b)

    def evaluator(theta: np.ndarray) -> float:
        return lam * f.value(A @ theta + b) + float(theta @ c) + d

    gradient = None
    if f.gradient is not None:
        def gradient(theta: np.ndarray) -> np.ndarray:
            return lam * A.T @ f.grad(A @ theta + b) + c

    hessian = None
    if f.hessian is not None:
        def hessian(theta: np.ndarray) -> np.ndarray:
            return lam * A.T @ f.hess(A @ theta + b) @ A

    boundary_value = None
    if f.boundary_value is not None:
        def boundary_value(theta: np.ndarray) -> Optional[float]:
            closure = f.boundary_value(A @ theta + b)
            if closure is None:
                return None
            return lam * closure + float(theta @ c) + d

    return ConvexFunction(
        label=f"deformed({f.label})",
        domain=domain,
        evaluator=evaluator,
        gradient=gradient,
        hessian=hessian,
        boundary_value=boundary_value,
        family="deformed",
        params={'base': f, 'P': P},
        strictly_convex=f.strictly_convex,
        legendre_type=f.legendre_type,
        smooth=f.smooth,
    )


def dual_argument(P: DeformParams, eta: np.ndarray) -> np.ndarray:
    """(1/lam) A^{-T} (eta - c): where L F is read in L(F_P)(eta)."""
    return P.solve_transpose(np.asarray(eta, dtype=float) - P.c) / P.lam


def grad_deformed_conjugate(grad_conjugate: GradientLike, P: DeformParams, eta) -> np.ndarray:
    """Gradient of L(F_P) at eta from the gradient of L F.

    grad G_P(eta) = A^{-1} (grad G((1/lam) A^{-T} (eta - c)) - b).
    """
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    if eta.shape != (P.dim,):
        raise DimensionError(f"eta must have length {P.dim}")
    u = dual_argument(P, eta)
    if isinstance(grad_conjugate, ConvexFunction):
        inner = grad_conjugate.grad(u)
    else:
        try:
            inner = np.atleast_1d(np.asarray(grad_conjugate(u), dtype=float))
        except (ValueError, FloatingPointError) as e:
            raise DomainError(f"conjugate gradient undefined at {u}: {e}") from e
        if not np.all(np.isfinite(inner)):
            raise DomainError(f"conjugate gradient undefined at {u}")
    return P.solve(inner - P.b)
