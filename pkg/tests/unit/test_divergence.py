"""Unit tests for glft.divergence."""
import math

import numpy as np
import pytest

from glft.divergence.divergences import (
    bregman,
    divergence_report,
    dual_flat_divergence,
    fenchel_young,
    flat_divergence,
)
from glft.divergence.invariance import invariance_check, invariance_sides
from glft.divergence.metric import dual_metric_check, hessian_metric, is_spd
from glft.divergence.points import DualPoint, dual_point, dual_point_from_eta, make_dual_point
from glft.funcspace.catalog import lookup_spec
from glft.legendre.pair import conjugate_pair
from glft.utils.exceptions import DomainError


@pytest.fixture
def exp_pair():
    return conjugate_pair(lookup_spec("exp"))


class TestDualPoints:
    def test_linked_from_theta(self):
        point = dual_point(lookup_spec("exp"), 0.0)
        assert point.eta.tolist() == [1.0]
        assert point.consistent
        assert point.path == "analytic"

    def test_linked_from_eta(self):
        point = dual_point_from_eta(lookup_spec("shannon"), 1.0)
        assert point.theta.tolist() == [0.0]

    def test_make_dual_point_flags_consistency(self):
        f = lookup_spec("exp")
        assert make_dual_point(f, 0.0, 1.0).consistent
        assert not make_dual_point(f, 0.0, 2.0).consistent

    def test_swapped(self):
        point = DualPoint(theta=1.0, eta=2.0, consistent=True).swapped()
        assert point.to_dict() == {'theta': [2.0], 'eta': [1.0], 'consistent': True,
                                   'path': "unchecked"}


class TestDivergences:
    def test_bregman_of_half_square(self):
        f = lookup_spec("power-norm{p=2}")
        assert bregman(f, [3.0], [1.0]) == pytest.approx(2.0)
        assert bregman(f, [1.0], [1.0]) == 0.0

    def test_fenchel_young_value(self, exp_pair):
        value = fenchel_young(exp_pair.primal, exp_pair.dual, [0.5], [2.0])
        assert value == pytest.approx(math.exp(0.5) + 2 * math.log(2.0) - 2.0 - 1.0)

    def test_fenchel_young_needs_finite_values(self, exp_pair):
        with pytest.raises(DomainError):
            fenchel_young(exp_pair.primal, exp_pair.dual, [0.5], [-1.0])

    def test_three_readings_agree(self, exp_pair):
        report = divergence_report(exp_pair, [0.5], [2.0])
        assert report.agrees
        assert report.max_discrepancy <= 1e-12
        assert report.inputs['theta_prime'] == pytest.approx([math.log(2.0)])
        assert report.paths['grad_F(theta)'] == "analytic"
        data = report.to_dict()
        assert data['agrees'] is True
        assert set(data) >= {'bregman_primal', 'bregman_dual', 'fenchel_young', 'max_discrepancy'}

    def test_flat_divergence_and_its_dual(self, exp_pair):
        p = dual_point(exp_pair.primal, 0.3)
        q = dual_point(exp_pair.primal, -0.2)
        assert flat_divergence(exp_pair, p, p) == pytest.approx(0.0, abs=1e-14)
        assert dual_flat_divergence(exp_pair, p, q) == pytest.approx(flat_divergence(exp_pair, q, p))
        assert flat_divergence(exp_pair, p, q) == pytest.approx(
            bregman(exp_pair.primal, p.theta, q.theta))

    def test_flat_divergence_rejects_unlinked_points(self, exp_pair):
        p = dual_point(exp_pair.primal, 0.3)
        loose = DualPoint(theta=0.0, eta=5.0)
        with pytest.raises(DomainError, match="unlinked"):
            flat_divergence(exp_pair, p, loose)


class TestInvariance:
    """D(p : q) = (1/lam) Y_{F_P, F*_P'}(theta_bar(p) : eta_bar(q))."""

    def test_worked_example(self, example_params):
        f = lookup_spec("exp")
        p, q = dual_point(f, 0.3), dual_point(f, -0.2)
        sides = invariance_sides(f, example_params, p, q)
        assert sides['theta_bar'].tolist() == pytest.approx([-0.35])
        assert sides['eta_bar'].tolist() == pytest.approx([4.0 * math.exp(-0.2) + 3.0])
        assert sides['rhs'] == pytest.approx(sides['lhs'], rel=1e-10)

    def test_report(self, example_params):
        f = lookup_spec("exp")
        report = invariance_check(f, example_params, dual_point(f, 0.3), dual_point(f, -0.2))
        assert report.status == "pass"
        assert report.details['lam'] == 2.0

    def test_two_dimensional(self, rng):
        from glft.deform.sampling import random_params

        f = lookup_spec("power-norm{p=2,m=2}")
        P = random_params(rng, 2, entry_bound=2.0, max_cond=20.0)
        p, q = dual_point(f, [0.5, -1.0]), dual_point(f, [1.0, 2.0])
        assert invariance_check(f, P, p, q).status == "pass"


class TestMetric:
    def test_hessian_of_exp(self):
        result = hessian_metric(lookup_spec("exp"), [0.0])
        assert result.matrix[0, 0] == pytest.approx(1.0, rel=1e-6)
        assert result.spd
        assert result.to_dict()['step'] == pytest.approx(1e-4)

    def test_is_spd(self):
        assert is_spd(np.eye(2))
        assert not is_spd(np.array([[1.0, 2.0], [2.0, 1.0]]))

    def test_metrics_are_inverse(self, exp_pair):
        report = dual_metric_check(exp_pair, [[-1.0], [0.0], [1.0]])
        assert report.status == "pass"
        assert report.samples == 3

    def test_stencil_outside_domain_is_inconclusive(self):
        pair = conjugate_pair(lookup_spec("neg-log"))
        report = dual_metric_check(pair, [[1e-6]], h=1e-4)
        assert report.status == "inconclusive"
