"""Numeric evidence for properties of conjugate pairs.

None of these are proofs: each returns a VerificationReport with the
worst sample it saw.
"""
from __future__ import annotations

import math
from typing import List, Optional

import numpy as np

from glft.core.config import get_config, tolerance
from glft.funcspace.domain import Domain, Singleton
from glft.funcspace.function import ConvexFunction, gradient_of
from glft.legendre.pair import ConjugatePair
from glft.utils.exceptions import DomainError, EngineError, NumericError
from glft.verification.report import VerificationReport, ViolationTracker

STEEPNESS_NOTE = ("steepness thresholds are an engineering convention: the boundary "
                  "limit cannot be decided from finitely many samples")


def default_rng(seed: Optional[int] = None) -> np.random.Generator:
    seed = int(get_config().get_with_default('seed')) if seed is None else seed
    return np.random.default_rng(seed)


def interior_points(domain: Domain, rng: np.random.Generator, count: int,
                    window: float = 5.0) -> np.ndarray:
    """Random points of the domain; a singleton yields its point."""
    if isinstance(domain, Singleton):
        return np.repeat(domain.point[None, :], count, axis=0)
    return domain.sample_interior(rng, count, window)


def _ray_slopes(f: ConvexFunction, inner: np.ndarray, boundary: np.ndarray,
                steps: int) -> List[float]:
    """d/dlam F(lam inner + (1 - lam) boundary) at lam = 10^-1 ... 10^-steps."""
    slopes = []
    for j in range(1, steps + 1):
        lam = 10.0 ** (-j)
        delta = lam * 1e-3
        plus = f.value((lam + delta) * inner + (1.0 - lam - delta) * boundary)
        minus = f.value((lam - delta) * inner + (1.0 - lam + delta) * boundary)
        slopes.append((plus - minus) / (2.0 * delta))
    return slopes


def _steepness_verdict(slopes: List[float], pass_ratio: float, fail_ratio: float) -> str:
    if not all(math.isfinite(s) for s in slopes):
        return "inconclusive"
    drops = [slopes[k - 1] - slopes[k] for k in range(1, len(slopes))]
    if drops[-1] <= 0.0 or drops[-2] <= 0.0:
        return "fail"
    ratio = drops[-1] / drops[-2]
    if ratio >= pass_ratio:
        return "pass"
    if ratio <= fail_ratio:
        return "fail"
    return "inconclusive"


def check_legendre_type(f: ConvexFunction, boundary_samples: Optional[int] = None,
                        ray_steps: Optional[int] = None,
                        rng: Optional[np.random.Generator] = None) -> VerificationReport:
    """Graded evidence that f is of Legendre type.

    Steepness: along rays from interior points to boundary points the
    directional slope must keep dropping as the boundary is approached.
    The drop between consecutive decades is compared with the previous
    one: a ratio >= pass_ratio means divergence, <= fail_ratio means the
    slope converges. A strict-convexity spot check runs alongside.
    """
    config = get_config()
    boundary_samples = boundary_samples or int(config.get_with_default('legendre_check.boundary_samples'))
    ray_steps = ray_steps or int(config.get_with_default('legendre_check.ray_steps'))
    window = float(config.get_with_default('legendre_check.interior_window'))
    pass_ratio = float(config.get_with_default('legendre_check.pass_ratio'))
    fail_ratio = float(config.get_with_default('legendre_check.fail_ratio'))
    rng = rng or default_rng()

    if isinstance(f.domain, Singleton) or not f.domain.is_open:
        raise DomainError(f"{f.label}: Legendre-type check needs an open domain")
    if f.dim > 2:
        raise DomainError("Legendre-type check handles one or two dimensions")

    tracker = ViolationTracker("legendre-type", None)
    tracker.notes.append(STEEPNESS_NOTE)

    # strict convexity spot check on interior pairs
    xs = f.domain.sample_interior(rng, 50, window)
    ys = f.domain.sample_interior(rng, 50, window)
    convexity_tol = tolerance('convexity')
    worst_gap = math.inf
    for x, y in zip(xs, ys):
        if np.allclose(x, y):
            continue
        fx, fy, fm = f.value(x), f.value(y), f.value(0.5 * (x + y))
        gap = 0.5 * (fx + fy) - fm
        worst_gap = min(worst_gap, gap)
        if gap < -convexity_tol * max(1.0, abs(fx), abs(fy)):
            tracker.record(-gap, True, kind="convexity", x=x, y=y)
    strict = worst_gap > 0.0

    if not f.domain.has_finite_boundary:
        tracker.notes.append("no finite boundary: steepness holds vacuously")
        tracker.record(0.0, not strict, kind="strict-convexity", worst_midpoint_gap=worst_gap)
        return tracker.report(strictly_convex=strict, rays=[])

    inner = f.domain.sample_interior(rng, boundary_samples, window)
    boundary = f.domain.sample_boundary(rng, boundary_samples, window)
    rays = []
    for theta, theta_b in zip(inner, boundary):
        try:
            slopes = _ray_slopes(f, theta, theta_b, ray_steps)
        except NumericError as e:
            tracker.skip(f"ray evaluation failed: {e}")
            continue
        verdict = _steepness_verdict(slopes, pass_ratio, fail_ratio)
        rays.append({'interior': theta, 'boundary': theta_b, 'slopes': slopes, 'verdict': verdict})
        if verdict == "inconclusive":
            tracker.skip("slope drops between decades fell between the thresholds")
            continue
        tracker.record(0.0 if verdict == "pass" else 1.0, verdict == "fail",
                       kind="steepness", interior=theta, boundary=theta_b, slopes=slopes)
    tracker.record(0.0, not strict, kind="strict-convexity", worst_midpoint_gap=worst_gap)
    return tracker.report(strictly_convex=strict, rays=rays)


def check_fenchel_young(pair: ConjugatePair, count: int = 1000,
                        rng: Optional[np.random.Generator] = None,
                        window: float = 3.0) -> VerificationReport:
    """F(theta) + F*(eta) - <theta, eta> >= -tol on random pairs, and = 0 at eta = grad F(theta)."""
    rng = rng or default_rng()
    tol = tolerance('fenchel_young')
    equality_tol = tolerance('fenchel_young_equality')
    tracker = ViolationTracker("fenchel-young", tol)
    F, G = pair.primal, pair.dual
    thetas = interior_points(F.domain, rng, count, window)
    etas = interior_points(G.domain, rng, count, window)
    for theta, eta in zip(thetas, etas):
        try:
            gap = F.value(theta) + G.value(eta) - float(theta @ eta)
        except NumericError as e:
            tracker.skip(str(e))
            continue
        violation = max(0.0, -gap)
        tracker.record(violation, gap < -tol, kind="inequality", theta=theta, eta=eta, gap=gap)

    if F.gradient is not None:
        for theta in thetas[: max(1, count // 10)]:
            try:
                eta, _ = gradient_of(F, theta)
                gap = F.value(theta) + G.value(eta) - float(theta @ eta)
            except (NumericError, EngineError) as e:
                tracker.skip(str(e))
                continue
            scale = max(1.0, abs(F.value(theta)))
            tracker.record(abs(gap), abs(gap) > equality_tol * scale,
                           kind="equality", theta=theta, eta=eta, gap=gap)
    return tracker.report(primal=F.label, dual=G.label, engine=pair.engine)


def check_reciprocal(pair: ConjugatePair, count: int = 100,
                     rng: Optional[np.random.Generator] = None,
                     window: float = 3.0) -> VerificationReport:
    """grad F*(grad F(theta)) = theta at random interior points."""
    rng = rng or default_rng()
    tol = tolerance('reciprocal')
    tracker = ViolationTracker("reciprocal-gradients", tol)
    F, G = pair.primal, pair.dual
    for theta in interior_points(F.domain, rng, count, window):
        try:
            eta, _ = gradient_of(F, theta)
            back, path = gradient_of(G, eta)
        except NumericError as e:
            tracker.skip(str(e))
            continue
        error = float(np.max(np.abs(back - theta)))
        tracker.record(error, error > tol * max(1.0, float(np.max(np.abs(theta)))),
                       theta=theta, eta=eta, theta_back=back, path=path)
    return tracker.report(primal=F.label, dual=G.label, engine=pair.engine)
