"""Named verification suites behind `glft verify <suite>`.

Every suite takes a SuiteOptions and returns one VerificationReport whose
status decides the exit code. Randomness comes from numpy generators
seeded by the options (or the config seed), so runs replay exactly.
"""
from __future__ import annotations

import math
import time
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from glft.core.config import get_config, tolerance
from glft.deform.deformation import deform
from glft.deform.params import DeformParams, diamond
from glft.deform.sampling import param_stream
from glft.divergence.divergences import dual_flat_divergence, divergence_report, flat_divergence
from glft.divergence.invariance import invariance_check
from glft.divergence.metric import dual_metric_check, hessian_metric
from glft.divergence.points import dual_point
from glft.funcspace.catalog import lookup_spec
from glft.funcspace.function import ConvexFunction
from glft.funcspace.grid import GridFunction, parse_grid_spec, sample
from glft.generalized.theorem import theorem_check, theorem_check_reversed
from glft.legendre.checks import (
    check_fenchel_young,
    check_legendre_type,
    check_reciprocal,
    interior_points,
)
from glft.legendre.closed_form import conjugate_closed
from glft.legendre.grid_transform import (
    biconjugate_grid,
    brute_sup,
    check_reverse_order,
    conjugate_grid_brute,
    conjugate_grid_fast,
    grid_hull,
    fast_sup,
)
from glft.legendre.pair import conjugate_pair
from glft.legendre.subdiff import subdiff_1d
from glft.utils.exceptions import DomainError, EngineError, NumericError, UsageError
from glft.utils.logging import log_debug
from glft.verification.report import VerificationReport, ViolationTracker, combine


class SuiteOptions(BaseModel):
    """Knobs shared by the suites; unset fields fall back to suite defaults."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    functions: List[str] = Field(default_factory=list)
    params: Optional[DeformParams] = None
    random_params: Optional[int] = None
    seed: Optional[int] = None
    engine: str = "closed"
    grid: Optional[str] = None
    samples: Optional[int] = None
    probes: Optional[int] = None
    dims: List[int] = Field(default_factory=lambda: [1, 2])
    size: Optional[int] = None
    reverse: bool = False

    def resolved_seed(self) -> int:
        return int(get_config().get_with_default('seed')) if self.seed is None else self.seed

    def rng(self, offset: int = 0) -> np.random.Generator:
        seed = self.resolved_seed() + offset
        log_debug(f"suite rng seed={seed}")
        return np.random.default_rng(seed)

    def count(self, default: int) -> int:
        return self.samples if self.samples is not None else default


Suite = Callable[[SuiteOptions], VerificationReport]
SUITES: Dict[str, Suite] = {}


def suite(name: str) -> Callable[[Suite], Suite]:
    def decorator(fn: Suite) -> Suite:
        SUITES[name] = fn
        return fn
    return decorator


def suite_names() -> List[str]:
    return list(SUITES)


def run_suite(name: str, options: Optional[SuiteOptions] = None) -> VerificationReport:
    if name not in SUITES:
        raise UsageError(f"unknown suite '{name}'; choose from {', '.join(SUITES)}")
    return SUITES[name](options or SuiteOptions())


def _functions(options: SuiteOptions, defaults: Sequence[str]) -> List[ConvexFunction]:
    return [lookup_spec(spec) for spec in (options.functions or defaults)]


def _params_for(options: SuiteOptions, m: int, default_count: int,
                seed_offset: int = 0, entry_bound: float = 10.0) -> List[DeformParams]:
    if options.params is not None:
        if options.params.dim != m:
            return []
        return [options.params]
    count = options.random_params if options.random_params is not None else default_count
    return list(param_stream(options.resolved_seed() + seed_offset, count, m,
                             entry_bound=entry_bound))


def _mild_params(rng: np.random.Generator, m: int) -> DeformParams:
    """P with lam in [0.5, 2] and A close to a rotation-free scaling, for grid engines."""
    lam = float(rng.uniform(0.5, 2.0))
    signs = rng.choice([-1.0, 1.0], size=m)
    A = np.diag(signs * rng.uniform(0.5, 2.0, size=m)) + rng.uniform(-0.2, 0.2, size=(m, m))
    return DeformParams(lam, A, rng.uniform(-1, 1, m), rng.uniform(-1, 1, m),
                        float(rng.uniform(-1, 1)))


# -- generalized transform ----------------------------------------------------

_SMOOTH_DEFAULTS = ['exp', 'exp-abs', 'exp-abs{restrict=positive}',
                    'power-norm{p=1.5}', 'power-norm{p=2}', 'power-norm{p=3}']

# The closed engine only keeps families that deform back into the catalog.
THEOREM_DEFAULTS = {
    'closed': ['quadratic-form{m=1}', 'quadratic-form{m=2}', 'affine{a=[1.5],b=0.5}',
               'indicator-point{a=[0.5],v=1}'],
    'newton': _SMOOTH_DEFAULTS,
    'grid-brute': _SMOOTH_DEFAULTS,
    'grid-fast': _SMOOTH_DEFAULTS,
}


@suite("theorem")
def theorem_suite(options: SuiteOptions) -> VerificationReport:
    """L_P F = L(F_{diamond(P)}) over functions x parameters."""
    engine = options.engine
    functions = _functions(options, THEOREM_DEFAULTS.get(engine, THEOREM_DEFAULTS['newton']))
    check = theorem_check_reversed if options.reverse else theorem_check
    reports = []
    for i, f in enumerate(functions):
        if engine.startswith('grid') and options.params is None:
            rng = options.rng(offset=i)
            count = options.random_params if options.random_params is not None else 20
            params = [_mild_params(rng, f.dim) for _ in range(count)]
        else:
            params = _params_for(options, f.dim, default_count=20, seed_offset=i)
        for P in params:
            report = check(f, P, engine=engine, count=options.probes)
            if len(params) > 1:
                report.details.pop('probes', None)
            reports.append(report)
    return combine("theorem-reversed" if options.reverse else "theorem", reports)


# -- deformation ------------------------------------------------------------------

@suite("involution")
def involution_suite(options: SuiteOptions) -> VerificationReport:
    """diamond(diamond(P)) = P componentwise."""
    tol = tolerance('involution')
    tracker = ViolationTracker("involution", tol)
    for m in options.dims:
        params = _params_for(options, m, default_count=1000, seed_offset=m)
        for P in params:
            error = diamond(diamond(P)).max_relative_error(P)
            tracker.record(error, error > tol, P=P.to_dict())
    return tracker.report(seed=options.resolved_seed(), dims=options.dims)


CONVEXITY_DEFAULTS = [
    'affine{a=[1.0],b=0.5}', 'indicator-point{a=[0.5]}', 'exp', 'shannon',
    'power-norm{p=1}', 'power-norm{p=1.5}', 'power-norm{p=3}', 'indicator-ball',
    'exp-abs', 'exp-abs{restrict=positive}', 'exp-abs-conjugate', 'neg-log',
    'neg-log-conjugate', 'quadratic-form{m=2}', 'rockafellar-2d',
]


@suite("convexity")
def convexity_suite(options: SuiteOptions) -> VerificationReport:
    """Midpoint convexity of deform(f, P) at random interior pairs."""
    tol = tolerance('convexity')
    pairs = options.count(500)
    reports = []
    for i, f in enumerate(_functions(options, CONVEXITY_DEFAULTS)):
        tracker = ViolationTracker("convexity", tol)
        rng = options.rng(offset=100 + i)
        for P in _params_for(options, f.dim, default_count=100, seed_offset=i):
            g = deform(f, P)
            xs = interior_points(g.domain, rng, pairs)
            ys = interior_points(g.domain, rng, pairs)
            for x, y in zip(xs, ys):
                fx, fy, fm = g.value(x), g.value(y), g.value(0.5 * (x + y))
                if not (math.isfinite(fx) and math.isfinite(fy)):
                    tracker.skip("sampled point outside the effective domain")
                    continue
                excess = fm - 0.5 * (fx + fy)
                scale = max(1.0, abs(fx), abs(fy))
                tracker.record(max(0.0, excess) / scale, excess > tol * scale, x=x, y=y)
        reports.append(tracker.report(partial_ok=True, function=f.label))
    return combine("convexity", reports)


# -- ordinary transform -------------------------------------------------------------

def _shannon_reference(eta: np.ndarray) -> float:
    x = float(eta[0])
    if x < 0:
        return math.inf
    return 0.0 if x == 0 else x * math.log(x) - x


def _exp_abs_reference(eta: np.ndarray) -> float:
    x = abs(float(eta[0]))
    return (1.0 + x) * math.log(1.0 + x) - x


def _affine_reference(a: np.ndarray, b: float) -> Callable[[np.ndarray], float]:
    return lambda eta: -b if np.array_equal(eta, a) else math.inf


# spec, reference conjugate, exact dual points always included
CLOSED_FORM_REFERENCES = [
    ('exp', _shannon_reference, [[0.0], [1.0]]),
    ('affine{a=[1.5],b=0.5}', _affine_reference(np.array([1.5]), 0.5), [[1.5]]),
    ('power-norm{p=3}', lambda eta: float(np.sum(np.abs(eta)) ** 1.5 / 1.5), [[0.0]]),
    ('quadratic-form{m=2}', lambda eta: 0.5 * float(eta @ eta), [[0.0, 0.0]]),
    ('exp-abs', _exp_abs_reference, [[0.0]]),
]


@suite("closed-forms")
def closed_forms_suite(options: SuiteOptions) -> VerificationReport:
    """Closed-form conjugates against independent formulas, +inf pattern included."""
    tol = tolerance('closed_forms')
    count = options.count(1000)
    reports = []
    for i, (spec, reference, exact) in enumerate(CLOSED_FORM_REFERENCES):
        f = lookup_spec(spec)
        dual = conjugate_closed(f)
        tracker = ViolationTracker("closed-forms", tol)
        rng = options.rng(offset=i)
        etas = np.vstack([rng.uniform(-5.0, 5.0, size=(count, f.dim)), np.array(exact)])
        for eta in etas:
            got, want = dual.value(eta), reference(eta)
            if math.isinf(got) or math.isinf(want):
                failed = got != want
                tracker.record(math.inf if failed else 0.0, failed, eta=eta, got=got, want=want)
                continue
            diff = abs(got - want)
            tracker.record(diff, diff > tol * max(1.0, abs(want)), eta=eta, got=got, want=want)
        reports.append(tracker.report(function=f.label, conjugate=dual.label))
    return combine("closed-forms", reports)


def _random_grid_instance(rng: np.random.Generator, n: int, k: int,
                          with_inf: bool = True):
    """Random 1-D samples and a sorted dual axis.

    Shapes: strictly convex, convex with collinear runs, affine, each
    possibly with noise; exact run slopes are added to the dual axis so
    ties are exercised.
    """
    theta = np.cumsum(rng.uniform(0.01, 1.0, size=n))
    theta -= theta.mean()
    shape = rng.choice(['convex', 'runs', 'affine'], p=[0.6, 0.2, 0.2])
    tie_slopes = np.array([])
    if shape == 'affine':
        slope, offset = rng.uniform(-5.0, 5.0), rng.uniform(-1.0, 1.0)
        values = slope * theta + offset
        tie_slopes = np.array([slope])
    else:
        if shape == 'runs':
            tie_slopes = np.sort(rng.uniform(-5.0, 5.0, size=min(4, n - 1)))
            slopes = np.sort(rng.choice(tie_slopes, size=n - 1))
        else:
            slopes = np.sort(rng.uniform(-5.0, 5.0, size=n - 1))
        values = np.concatenate([[0.0], np.cumsum(slopes * np.diff(theta))])
        if rng.random() < 0.3:
            values = values + rng.normal(scale=0.5, size=n)
    if with_inf and n > 2 and rng.random() < 0.5:
        mask = rng.random(n) < 0.2
        mask[rng.integers(n)] = False
        values[mask] = np.inf
    eta = np.cumsum(rng.uniform(0.01, 1.0, size=k))
    eta = np.unique(np.concatenate([eta - eta.mean(), tie_slopes]))
    return GridFunction((theta,), values), eta


@suite("oracle")
def oracle_suite(options: SuiteOptions) -> VerificationReport:
    """conjugate_grid_fast == conjugate_grid_brute, values and argmax, bit for bit."""
    tracker = ViolationTracker("oracle", 0.0)
    rng = options.rng()
    for _ in range(options.count(200)):
        n, k = int(rng.integers(2, 513)), int(rng.integers(2, 513))
        g, eta = _random_grid_instance(rng, n, k)
        fast = conjugate_grid_fast(g, [eta])
        brute = conjugate_grid_brute(g, [eta])
        mismatch = int(np.sum(fast.values != brute.values) + np.sum(fast.argmax != brute.argmax))
        tracker.record(float(mismatch), mismatch > 0, n=n, k=k)
    details: Dict[str, Any] = {}
    if options.size:
        details['large'] = _large_oracle(options.size, rng, tracker)
    return tracker.report(**details)


# The fast transform must beat brute force by this factor from this size on.
MIN_SPEEDUP = 20.0
SPEEDUP_SIZE = 100_000


def _large_oracle(size: int, rng: np.random.Generator, tracker: ViolationTracker,
                  spot_checks: int = 1000) -> Dict[str, Any]:
    """Fast transform on size x size against brute force at spot-checked dual nodes.

    From SPEEDUP_SIZE on, a speedup below MIN_SPEEDUP is recorded as a failure.
    """
    g, eta = _random_grid_instance(rng, size, size, with_inf=False)
    start = time.perf_counter()
    out, arg = fast_sup(g.axes[0], g.values, grid_hull(g), eta)
    fast_seconds = time.perf_counter() - start

    spots = rng.choice(size, size=min(spot_checks, size), replace=False)
    nodes, values = g.nodes(), g.flat_values()
    start = time.perf_counter()
    for j in spots:
        value, index = brute_sup(nodes, values, eta[j:j + 1])
        failed = value != out[j] or index != arg[j]
        tracker.record(float(failed), failed, eta=eta[j], size=size)
    brute_seconds = (time.perf_counter() - start) * eta.shape[0] / spots.shape[0]
    speedup = brute_seconds / fast_seconds if fast_seconds > 0 else math.inf
    if size >= SPEEDUP_SIZE:
        slow = speedup < MIN_SPEEDUP
        tracker.record(float(slow), slow, speedup=speedup, required=MIN_SPEEDUP, size=size)
    return {
        'size': size,
        'spot_checks': int(spots.shape[0]),
        'fast_seconds': fast_seconds,
        'brute_seconds_extrapolated': brute_seconds,
        'speedup': speedup,
        'min_speedup': MIN_SPEEDUP if size >= SPEEDUP_SIZE else None,
    }


@suite("biconjugate")
def biconjugate_suite(options: SuiteOptions) -> VerificationReport:
    """(g*)* = g on the central 80% for convex samples; (g*)* <= g always."""
    spec = options.functions[0] if options.functions else 'quadratic-form{m=1}'
    f = lookup_spec(spec)
    axes = parse_grid_spec(options.grid or "-5:5:1001")
    g = sample(f, axes)
    tol = tolerance('biconjugate')

    convex = ViolationTracker("biconjugate-convex", tol)
    bic = biconjugate_grid(g)
    keep = np.ones(g.shape, dtype=bool)
    for k, n in enumerate(g.shape):
        cut = int(round(0.1 * n))
        index = [slice(None)] * g.dim
        index[k] = slice(0, cut)
        keep[tuple(index)] = False
        index[k] = slice(n - cut, n)
        keep[tuple(index)] = False
    finite = keep & np.isfinite(g.values)
    error = float(np.max(np.abs(bic.values[finite] - g.values[finite]))) if np.any(finite) else 0.0
    convex.record(error, error > tol, function=f.label, nodes=int(np.sum(finite)))

    minorant = ViolationTracker("biconjugate-minorant", 1e-12)
    rng = options.rng()
    x = np.linspace(-1.0, 1.0, 201)
    samples = [GridFunction((x,), -x ** 2, label="-theta^2")]
    for _ in range(options.count(20)):
        samples.append(GridFunction((x,), rng.normal(size=x.shape[0]), label="noise"))
    samples.append(g)
    for h in samples:
        over = biconjugate_grid(h).values - h.values
        worst = float(np.max(np.where(np.isfinite(h.values), over, -np.inf)))
        minorant.record(max(0.0, worst), worst > 1e-12, function=h.label)
    return combine("biconjugate", [convex.report(), minorant.report()])


@suite("reverse-order")
def reverse_order_suite(options: SuiteOptions) -> VerificationReport:
    """f2 <= f1 nodewise implies conj(f2) >= conj(f1) nodewise."""
    rng = options.rng()
    axes = parse_grid_spec(options.grid or "-3:3:201")
    x = axes[0].samples()
    dual = [np.linspace(-5.0, 5.0, 201)]
    reports = []
    for _ in range(options.count(100)):
        f1 = rng.normal(scale=2.0) * x ** 2 + rng.normal(size=x.shape[0])
        f2 = f1 - np.abs(rng.normal(size=x.shape[0]))
        reports.append(check_reverse_order(GridFunction((x,), f1), GridFunction((x,), f2), dual))
    return combine("reverse-order", reports)


RECIPROCAL_DEFAULTS = ['exp', 'quadratic-form{m=2}', 'power-norm{p=3}', 'neg-log',
                       'exp-abs', 'exp-abs{restrict=positive}']


@suite("reciprocal")
def reciprocal_suite(options: SuiteOptions) -> VerificationReport:
    """grad F*(grad F(theta)) = theta for Legendre-type pairs."""
    reports = []
    for i, f in enumerate(_functions(options, RECIPROCAL_DEFAULTS)):
        pair = conjugate_pair(f, options.engine)
        reports.append(check_reciprocal(pair, count=options.count(100), rng=options.rng(offset=i)))
    return combine("reciprocal", reports)


# -- divergences -------------------------------------------------------------------

DIVERGENCE_DEFAULTS = ['exp', 'quadratic-form{m=2}', 'power-norm{p=3}', 'neg-log']


def _triple_equivalence(pair, rng: np.random.Generator, count: int) -> VerificationReport:
    tracker = ViolationTracker("triple-equivalence", tolerance('divergence'))
    F, G = pair.primal, pair.dual
    thetas = interior_points(F.domain, rng, count, window=2.0)
    etas = interior_points(G.domain, rng, count, window=2.0)
    for theta, eta_prime in zip(thetas, etas):
        try:
            report = divergence_report(pair, theta, eta_prime)
        except (DomainError, EngineError) as e:
            tracker.skip(str(e))
            continue
        tracker.record(report.max_discrepancy, not report.agrees, **report.inputs)
    return tracker.report(partial_ok=True, function=F.label)


def _duality_flip(pair, rng: np.random.Generator, count: int) -> VerificationReport:
    tracker = ViolationTracker("duality-flip", 1e-9)
    thetas = interior_points(pair.primal.domain, rng, 2 * count, window=2.0)
    for theta_p, theta_q in zip(thetas[:count], thetas[count:]):
        try:
            p, q = dual_point(pair.primal, theta_p), dual_point(pair.primal, theta_q)
            forward = flat_divergence(pair, q, p)
            flipped = dual_flat_divergence(pair, p, q)
        except (DomainError, EngineError) as e:
            tracker.skip(str(e))
            continue
        diff = abs(forward - flipped)
        tracker.record(diff, diff > 1e-9 * max(1.0, abs(forward)), theta_p=theta_p, theta_q=theta_q)
    return tracker.report(partial_ok=True, function=pair.primal.label)


def _invariance(f: ConvexFunction, options: SuiteOptions, rng: np.random.Generator,
                engine: str, seed_offset: int) -> VerificationReport:
    reports = []
    for P in _params_for(options, f.dim, default_count=100, seed_offset=seed_offset):
        theta_p, theta_q = interior_points(f.domain, rng, 2, window=2.0)
        try:
            p, q = dual_point(f, theta_p), dual_point(f, theta_q)
        except NumericError as e:
            log_debug(f"invariance: skipped point pair: {e}")
            continue
        reports.append(invariance_check(f, P, p, q, engine=engine))
    return combine("invariance", reports)


# Second differences hold the dual-metric tolerance for metric eigenvalues in this range.
METRIC_RANGE = (0.1, 10.0)


def _dual_metric(pair, rng: np.random.Generator, count: int) -> VerificationReport:
    """Hess F against the inverse of Hess F* at sampled points of moderate curvature."""
    F = pair.primal
    thetas = []
    for theta in interior_points(F.domain, rng, count, window=2.0):
        theta = F.point(theta)
        try:
            eigenvalues = np.linalg.eigvalsh(hessian_metric(F, theta).matrix)
        except NumericError:
            continue
        if METRIC_RANGE[0] <= eigenvalues.min() and eigenvalues.max() <= METRIC_RANGE[1]:
            thetas.append(theta)
    return dual_metric_check(pair, thetas)


@suite("divergence")
def divergence_suite(options: SuiteOptions) -> VerificationReport:
    """Triple equivalence, duality flip, Fenchel-Young, 1/lam invariance and the dual metric."""
    reports = []
    count = options.count(500)
    for i, f in enumerate(_functions(options, DIVERGENCE_DEFAULTS)):
        pair = conjugate_pair(f, options.engine)
        rng = options.rng(offset=i)
        reports.append(_triple_equivalence(pair, rng, count))
        reports.append(_duality_flip(pair, rng, max(1, min(count, 200))))
        reports.append(check_fenchel_young(pair, count=count, rng=rng))
        reports.append(_invariance(f, options, rng, options.engine, seed_offset=i))
        reports.append(_dual_metric(pair, rng, max(1, min(count, 100))))
    return combine("divergence", reports)


# -- subdifferentials and Legendre type ---------------------------------------------

# spec, point, expected lower, expected upper
SUBDIFF_EXPECTATIONS = [
    ('power-norm{p=1}', 0.0, -1.0, 1.0),
    ('exp-abs', 0.0, 0.0, 0.0),
    ('exp-abs', 1.0, math.e - 1.0, math.e - 1.0),
    ('exp-abs-conjugate', -2.0, -math.log(3.0), -math.log(3.0)),
]


@suite("subdiff")
def subdiff_suite(options: SuiteOptions) -> VerificationReport:
    """One-sided slopes at kinks and smooth points against known intervals."""
    tol = tolerance('subdiff')
    tracker = ViolationTracker("subdiff", tol)
    for spec, theta, lower, upper in SUBDIFF_EXPECTATIONS:
        sub = subdiff_1d(lookup_spec(spec), theta)
        error = max(abs(float(sub.lower) - lower), abs(float(sub.upper) - upper))
        tracker.record(error, error > tol, function=spec, at=theta,
                       interval=[str(sub.lower), str(sub.upper)])
    return tracker.report()


# spec -> expected verdict of the steepness checker
LEGENDRE_EXPECTATIONS = {
    'exp': 'pass',
    'neg-log': 'pass',
    'neg-log{m=2}': 'pass',
    'exp-abs{restrict=positive}': 'fail',
}


@suite("legendre-type")
def legendre_type_suite(options: SuiteOptions) -> VerificationReport:
    """Graded Legendre-type evidence; with no functions given, known verdicts are replayed."""
    if options.functions:
        reports = [check_legendre_type(f, rng=options.rng(offset=i))
                   for i, f in enumerate(_functions(options, []))]
        return combine("legendre-type", reports)
    tracker = ViolationTracker("legendre-type", None)
    for i, (spec, expected) in enumerate(LEGENDRE_EXPECTATIONS.items()):
        report = check_legendre_type(lookup_spec(spec), rng=options.rng(offset=i))
        tracker.record(0.0 if report.status == expected else 1.0, report.status != expected,
                       function=spec, expected=expected, verdict=report.status)
    return tracker.report()
