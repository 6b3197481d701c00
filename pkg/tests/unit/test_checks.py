"""Unit tests for subdifferentials, pair checks and verification reports."""
import json
import math

import numpy as np
import pytest

from glft.funcspace.catalog import lookup_spec
from glft.legendre.checks import (
    check_fenchel_young,
    check_legendre_type,
    check_reciprocal,
    interior_points,
)
from glft.legendre.pair import conjugate_pair
from glft.legendre.subdiff import subdiff_1d
from glft.utils.exceptions import DimensionError, DomainError
from glft.verification.report import ViolationTracker, combine, jsonable


class TestSubdiff:
    """One-sided difference intervals."""

    def test_kink_of_absolute_value(self):
        sub = subdiff_1d(lookup_spec("power-norm{p=1}"), 0.0)
        assert float(sub.lower) == pytest.approx(-1.0)
        assert float(sub.upper) == pytest.approx(1.0)
        assert not sub.is_singleton
        assert sub.contains(0.3)
        assert sub.value is None

    def test_smooth_minimum_is_singleton(self):
        # exp(|x|) - |x| - 1 ~ x^2 / 2 near 0, so the subdifferential is {0}
        sub = subdiff_1d(lookup_spec("exp-abs"), 0.0)
        assert sub.is_singleton
        assert sub.value == pytest.approx(0.0, abs=1e-5)

    def test_smooth_point(self):
        sub = subdiff_1d(lookup_spec("exp"), 1.0)
        assert sub.value == pytest.approx(math.e, rel=1e-5)

    def test_outside_domain_is_empty(self):
        sub = subdiff_1d(lookup_spec("neg-log"), -1.0)
        assert sub.empty
        assert not sub.contains(0.0)
        assert math.isnan(sub.width)

    def test_boundary_point_has_infinite_end(self):
        sub = subdiff_1d(lookup_spec("shannon"), 0.0)
        assert sub.lower.is_neg_inf
        assert sub.upper.is_finite
        assert sub.contains(-1e6)
        assert sub.to_dict()['lower'] == "-inf"

    def test_one_dimensional_only(self):
        with pytest.raises(DimensionError):
            subdiff_1d(lookup_spec("exp{m=2}"), 0.0)


class TestPairChecks:
    def test_fenchel_young_exp(self, rng):
        report = check_fenchel_young(conjugate_pair(lookup_spec("exp")), count=200, rng=rng)
        assert report.status == "pass"
        assert report.samples > 200
        assert report.details['engine'] == "closed"

    def test_fenchel_young_detects_wrong_dual(self, rng):
        from glft.legendre.pair import ConjugatePair

        wrong = ConjugatePair(lookup_spec("exp"), lookup_spec("power-norm{p=2}"), "closed")
        report = check_fenchel_young(wrong, count=50, rng=rng)
        assert report.status == "fail"
        assert report.witness is not None

    def test_reciprocal_gradients(self, rng):
        report = check_reciprocal(conjugate_pair(lookup_spec("neg-log")), count=50, rng=rng)
        assert report.status == "pass"

    def test_interior_points_stay_inside(self, rng):
        f = lookup_spec("shannon{m=2}")
        points = interior_points(f.domain, rng, 20)
        assert points.shape == (20, 2)
        assert all(f.domain.contains(p) for p in points)


class TestLegendreType:
    def test_exp_everywhere_finite(self, rng):
        report = check_legendre_type(lookup_spec("exp"), rng=rng)
        assert report.status == "pass"
        assert report.details['strictly_convex'] is True

    def test_flat_function_fails(self, rng):
        report = check_legendre_type(lookup_spec("indicator-ball"), rng=rng)
        assert report.status == "fail"
        assert report.details['strictly_convex'] is False

    def test_needs_open_domain(self, rng):
        with pytest.raises(DomainError):
            check_legendre_type(lookup_spec("indicator-point{a=[1],v=0}"), rng=rng)

    def test_note_on_thresholds(self, rng):
        report = check_legendre_type(lookup_spec("exp"), rng=rng)
        assert any("engineering convention" in note for note in report.notes)


class TestReports:
    def test_jsonable(self):
        data = jsonable({'a': np.array([1.0, math.inf]), 'b': np.float64(-math.inf),
                         'c': np.bool_(True), 'd': math.nan, 'e': np.int64(3)})
        assert data == {'a': [1.0, "inf"], 'b': "-inf", 'c': True, 'd': "nan", 'e': 3}
        json.dumps(data)

    def test_tracker_pass(self):
        tracker = ViolationTracker("demo", 1e-6)
        tracker.record(1e-9, False, at=0.0)
        tracker.record(1e-8, False, at=1.0)
        report = tracker.report()
        assert report.status == "pass"
        assert report.worst_violation == 1e-8
        assert report.witness == {'at': 1.0}
        assert report.exit_code == 0

    def test_tracker_fail(self):
        tracker = ViolationTracker("demo", 1e-6)
        tracker.record(1.0, True)
        assert tracker.report().status == "fail"
        assert tracker.report().exit_code == 1

    def test_empty_is_inconclusive(self):
        assert ViolationTracker("demo", None).report().status == "inconclusive"

    def test_skips(self):
        tracker = ViolationTracker("demo", 1e-6)
        tracker.record(0.0, False)
        tracker.skip("engine gave up")
        tracker.skip("engine gave up")
        assert tracker.report().status == "inconclusive"
        assert tracker.report(partial_ok=True).status == "pass"
        assert tracker.notes == ["engine gave up"]
        assert tracker.report().inconclusive == 2

    def test_combine(self):
        ok = ViolationTracker("a", 1.0)
        ok.record(0.1, False)
        bad = ViolationTracker("b", 1.0)
        bad.record(2.0, True, where="here")
        report = combine("both", [ok.report(), bad.report()])
        assert report.status == "fail"
        assert report.worst_violation == 2.0
        assert report.witness == {'where': "here"}
        assert report.samples == 2
        assert len(report.details['parts']) == 2

    def test_combine_nothing(self):
        assert combine("none", []).status == "inconclusive"

    def test_to_json_is_parseable(self):
        tracker = ViolationTracker("demo", 1e-6)
        tracker.record(math.inf, True, value=math.inf)
        parsed = json.loads(tracker.report().to_json())
        assert parsed['worst_violation'] == "inf"
        assert parsed['witness'] == {'value': "inf"}
