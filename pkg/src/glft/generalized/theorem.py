"""Executable form of L_P(F) = (F*)_P = L(F_{P'}) with P' = diamond(P).

The left side is the generalized transform with the tuple P read as
dual-side parameters; the right side is the ordinary conjugate of F
deformed by diamond(P), by the same engine unless that engine would read
it back through the identity itself. Both are compared pointwise on a
probe set placed where the left side is finite, so that matches are not
just +inf = +inf.
"""
from __future__ import annotations

import math
from typing import Iterable, List, Optional, Union

import numpy as np

from glft.core.config import get_config, tolerance
from glft.deform.deformation import deform
from glft.deform.params import DeformParams, diamond
from glft.funcspace.domain import Singleton
from glft.funcspace.extended import ExtendedReal, PosInf, format_extended
from glft.funcspace.function import ConvexFunction, gradient_of
from glft.generalized.transform import GeneralizedTransform
from glft.legendre.closed_form import conjugate_closed
from glft.legendre.engines import ConjugationEngine, get_engine
from glft.utils.exceptions import DomainError, EngineError, NoClosedFormError, NumericError, OutOfRangeError
from glft.utils.logging import log_debug
from glft.verification.report import VerificationReport, ViolationTracker

PRESCAN_CANDIDATES = 121
GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0

TOLERANCE_BY_ENGINE = {
    'closed': 'theorem_closed',
    'newton': 'theorem_newton',
    'grid-brute': 'theorem_grid',
    'grid-fast': 'theorem_grid',
}


def rank1_lattice(count: int) -> np.ndarray:
    """`count` points of a shifted rank-1 lattice in the unit square."""
    generator = max(1, int(round(count / GOLDEN)))
    while math.gcd(generator, count) != 1:
        generator += 1
    k = np.arange(count)
    first = (k + 0.5) / count
    second = np.mod(k * generator / count + 0.5 / count, 1.0)
    return np.column_stack([first, second])


def unit_points(count: int, m: int) -> np.ndarray:
    """Equispaced cell midpoints in [0, 1]^m (1D) or a lattice (2D)."""
    if m == 1:
        return ((np.arange(count) + 0.5) / count)[:, None]
    if m == 2:
        return rank1_lattice(count)
    raise NumericError("probe placement handles one or two dimensions")


def _center(f: ConvexFunction) -> np.ndarray:
    """A slope of f at an interior point: the natural center of dom L F."""
    try:
        u0, _ = gradient_of(f, f.domain.interior_point())
    except (NumericError, ValueError, FloatingPointError):
        return np.zeros(f.dim)
    return u0 if np.all(np.isfinite(u0)) else np.zeros(f.dim)


def _side(evaluate, f: ConvexFunction, eta: np.ndarray) -> ExtendedReal:
    """One side of the identity; gradient-range misses read as +inf for Legendre-type f."""
    try:
        return evaluate(eta)
    except OutOfRangeError:
        if f.legendre_type:
            return PosInf
        raise


def _singleton_preimage(f: ConvexFunction, P: DeformParams) -> Optional[np.ndarray]:
    """eta with P.A eta + P.b = a when dom L F = {a}."""
    try:
        dual = conjugate_closed(f)
    except NoClosedFormError:
        return None
    if isinstance(dual.domain, Singleton):
        return P.solve(dual.domain.point - P.b)
    return None


def place_probes(f: ConvexFunction, P: DeformParams,
                 engine: Union[str, ConjugationEngine] = "closed",
                 count: Optional[int] = None,
                 window: Optional[List[float]] = None) -> np.ndarray:
    """Dual probes inside the finite part of the left side.

    Candidates are laid out in u = A eta + b space around a slope of f,
    the bounding box of the finite ones is filled with `count` probes and
    mapped back by eta = A^{-1} (u - b). If no candidate is finite the
    whole window is probed.
    """
    config = get_config()
    count = count or int(config.get_with_default('probes.count'))
    lo, hi = window or config.get_with_default('probes.window')
    transform = GeneralizedTransform.build(P, engine)
    m = f.dim

    center = _center(f)
    candidates = center + lo + (hi - lo) * unit_points(PRESCAN_CANDIDATES, m)
    finite = []
    for u in candidates:
        try:
            value = _side(lambda eta: transform.evaluate(f, eta), f, P.solve(u - P.b))
        except NumericError:
            continue
        if value.is_finite:
            finite.append(u)
    if finite:
        kept = np.array(finite)
        box_lo, box_hi = kept.min(axis=0), kept.max(axis=0)
    else:
        box_lo, box_hi = center + lo, center + hi
    log_debug(f"probe box for {f.label}: {box_lo.tolist()} .. {box_hi.tolist()} "
              f"({len(finite)}/{PRESCAN_CANDIDATES} finite candidates)")

    us = box_lo + (box_hi - box_lo) * unit_points(count, m)
    probes = [P.solve(u - P.b) for u in us]
    extra = _singleton_preimage(f, P)
    if extra is not None:
        probes.append(extra)
    return np.array(probes)


def right_side_engine(engine: ConjugationEngine, deformed: ConvexFunction) -> ConjugationEngine:
    """Engine for L(F_{diamond(P)}).

    The closed rule for a deformed entry is the identity under test, so
    under the closed engine only entries that deform back into a catalog
    family stay closed; the others are conjugated by Newton.
    """
    if engine.name == "closed" and deformed.family == "deformed":
        return get_engine("newton")
    return engine


def theorem_check(f: ConvexFunction, P: DeformParams,
                  probe_points: Optional[Iterable] = None,
                  engine: Union[str, ConjugationEngine] = "closed",
                  tol: Optional[float] = None,
                  count: Optional[int] = None) -> VerificationReport:
    """Compare L_P F with L(F_{diamond(P)}) at every probe.

    The right side is evaluated by right_side_engine. Both sides +inf is
    a match, exactly one side +inf a failure, and an engine error at a
    probe leaves that probe inconclusive.
    """
    engine = get_engine(engine) if isinstance(engine, str) else engine
    deformed = deform(f, diamond(P))
    rhs_engine = right_side_engine(engine, deformed)
    tol = tol if tol is not None else tolerance(TOLERANCE_BY_ENGINE.get(rhs_engine.name, 'theorem_grid'))
    tracker = ViolationTracker("theorem", tol)

    transform = GeneralizedTransform.build(P, engine)
    if probe_points is None:
        probes = place_probes(f, P, engine, count)
    else:
        probes = np.array([f.point(eta) for eta in probe_points])

    rows = []
    max_abs = 0.0
    for eta in probes:
        try:
            lhs = _side(lambda x: transform.evaluate(f, x), f, eta)
            rhs = _side(lambda x: ExtendedReal(rhs_engine.evaluate(deformed, x)), deformed, eta)
        except (EngineError, DomainError) as e:
            tracker.skip(f"{type(e).__name__}: {e}")
            rows.append({'eta': eta, 'status': 'inconclusive'})
            continue
        if lhs.is_pos_inf and rhs.is_pos_inf:
            diff, failed = 0.0, False
        elif lhs.is_pos_inf or rhs.is_pos_inf:
            diff, failed = math.inf, True
        else:
            diff = abs(float(lhs) - float(rhs))
            failed = diff > tol * max(1.0, abs(float(lhs)))
        max_abs = max(max_abs, diff)
        tracker.record(diff, failed, eta=eta, lhs=str(lhs), rhs=str(rhs))
        rows.append({'eta': eta, 'lhs': format_extended(float(lhs)),
                     'rhs': format_extended(float(rhs)), 'diff': diff})

    return tracker.report(
        partial_ok=True,
        function=f.label, engine=engine.name, rhs_engine=rhs_engine.name, P=P.to_dict(),
        max_abs_diff=max_abs, probes=rows,
    )


def theorem_check_reversed(f: ConvexFunction, P: DeformParams,
                           engine: Union[str, ConjugationEngine] = "closed",
                           tol: Optional[float] = None,
                           count: Optional[int] = None) -> VerificationReport:
    """(L F)_{diamond(P)} = L(F_P): the same harness at diamond(P)."""
    report = theorem_check(f, diamond(P), engine=engine, tol=tol, count=count)
    report.check = "theorem-reversed"
    return report
