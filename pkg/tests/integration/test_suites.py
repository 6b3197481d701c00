"""Integration tests for the named verification suites."""
import math

import pytest

from glft.deform.deformation import deform
from glft.deform.params import DeformParams
from glft.funcspace.catalog import lookup_spec
from glft.utils.exceptions import UsageError
from glft.verification import suites
from glft.verification.suites import SUITES, THEOREM_DEFAULTS, SuiteOptions, run_suite, suite_names


class TestRegistry:
    def test_names(self):
        assert set(suite_names()) == {
            'theorem', 'involution', 'convexity', 'closed-forms', 'oracle', 'biconjugate',
            'reverse-order', 'reciprocal', 'divergence', 'subdiff', 'legendre-type',
        }
        assert list(SUITES) == suite_names()

    def test_unknown_suite(self):
        with pytest.raises(UsageError, match="unknown suite"):
            run_suite("everything")


class TestDeformationSuites:
    def test_involution(self):
        report = run_suite("involution", SuiteOptions(random_params=50, dims=[1, 2, 3], seed=5))
        assert report.status == "pass"
        assert report.samples == 150
        assert report.worst_violation <= 1e-10
        assert report.details['seed'] == 5

    def test_involution_replays(self):
        first = run_suite("involution", SuiteOptions(random_params=10, seed=9))
        second = run_suite("involution", SuiteOptions(random_params=10, seed=9))
        assert first.worst_violation == second.worst_violation

    def test_convexity(self):
        options = SuiteOptions(functions=['exp', 'power-norm{p=1}', 'neg-log'],
                               random_params=3, samples=50, seed=1)
        assert run_suite("convexity", options).status == "pass"


class TestTheoremSuite:
    def test_worked_example(self, example_params):
        options = SuiteOptions(functions=['quadratic', 'exp'], params=example_params)
        report = run_suite("theorem", options)
        assert report.status == "pass"
        assert len(report.details['parts']) == 2

    def test_random_parameters_closed(self):
        options = SuiteOptions(functions=['quadratic-form{m=1}', 'quadratic-form{m=2}'], random_params=3,
                               seed=11, probes=9)
        assert run_suite("theorem", options).status == "pass"

    def test_closed_defaults_deform_into_the_catalog(self, example_params):
        for spec in THEOREM_DEFAULTS['closed']:
            f = lookup_spec(spec)
            P = example_params if f.dim == 1 else DeformParams.identity(f.dim)
            assert deform(f, P).family != "deformed"

    def test_smooth_defaults_include_restricted_exp_abs(self):
        for engine in ('newton', 'grid-brute', 'grid-fast'):
            assert 'exp-abs{restrict=positive}' in THEOREM_DEFAULTS[engine]

    def test_reverse(self, example_params):
        options = SuiteOptions(functions=['exp'], params=example_params, reverse=True)
        report = run_suite("theorem", options)
        assert report.check == "theorem-reversed"
        assert report.status == "pass"

    def test_grid_engine_with_mild_parameters(self):
        options = SuiteOptions(functions=['power-norm{p=2}'], engine='grid-fast',
                               random_params=2, seed=3, probes=7)
        assert run_suite("theorem", options).status == "pass"

    def test_parameters_of_other_dimension_are_skipped(self):
        P = DeformParams.identity(2)
        report = run_suite("theorem", SuiteOptions(functions=['exp'], params=P))
        assert report.status == "inconclusive"


class TestTransformSuites:
    def test_closed_forms(self):
        assert run_suite("closed-forms", SuiteOptions(samples=100)).status == "pass"

    def test_oracle(self):
        report = run_suite("oracle", SuiteOptions(samples=20, seed=2))
        assert report.status == "pass"
        assert report.worst_violation == 0.0

    def test_oracle_large_instance(self):
        report = run_suite("oracle", SuiteOptions(samples=2, size=5000, seed=2))
        assert report.status == "pass"
        large = report.details['large']
        assert large['size'] == 5000
        assert large['spot_checks'] == 1000

    @pytest.mark.slow
    def test_oracle_speedup_at_full_size(self):
        report = run_suite("oracle", SuiteOptions(samples=2, size=100_000, seed=2))
        assert report.status == "pass"
        large = report.details['large']
        assert large['min_speedup'] == 20.0
        assert large['speedup'] >= 20.0

    def test_oracle_fails_when_too_slow(self, monkeypatch):
        monkeypatch.setattr(suites, "SPEEDUP_SIZE", 1000)
        monkeypatch.setattr(suites, "MIN_SPEEDUP", math.inf)
        report = run_suite("oracle", SuiteOptions(samples=2, size=1000, seed=2))
        assert report.status == "fail"
        assert report.details['large']['min_speedup'] == math.inf

    def test_oracle_speedup_not_enforced_below_size(self):
        report = run_suite("oracle", SuiteOptions(samples=2, size=1000, seed=2))
        assert report.details['large']['min_speedup'] is None

    def test_biconjugate(self):
        assert run_suite("biconjugate", SuiteOptions(samples=3)).status == "pass"

    def test_reverse_order(self):
        assert run_suite("reverse-order", SuiteOptions(samples=10)).status == "pass"

    def test_reciprocal(self):
        options = SuiteOptions(functions=['exp', 'neg-log'], samples=20)
        assert run_suite("reciprocal", options).status == "pass"


class TestDivergenceAndLegendreSuites:
    def test_divergence(self, example_params):
        options = SuiteOptions(functions=['exp'], params=example_params, samples=30)
        report = run_suite("divergence", options)
        assert report.status == "pass"
        checks = [part['check'] for part in report.details['parts']]
        assert checks == ['triple-equivalence', 'duality-flip', 'fenchel-young', 'invariance', 'dual-metric']
        assert report.details['parts'][-1]['samples'] > 0

    def test_divergence_defaults_check_the_dual_metric(self):
        report = run_suite("divergence", SuiteOptions(samples=20, seed=3))
        metric_parts = [part for part in report.details['parts'] if part['check'] == 'dual-metric']
        assert len(metric_parts) == 4
        assert all(part['status'] == "pass" for part in metric_parts)

    def test_subdiff(self):
        report = run_suite("subdiff")
        assert report.status == "pass"
        assert report.samples == 4

    def test_legendre_type_known_verdicts(self):
        report = run_suite("legendre-type")
        assert report.status == "pass"

    def test_legendre_type_for_given_function(self):
        report = run_suite("legendre-type", SuiteOptions(functions=['exp']))
        assert report.status == "pass"
