"""Unit tests for the discrete transform on grids."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glft.funcspace.catalog import lookup_spec
from glft.funcspace.grid import GridFunction, parse_grid_spec, sample
from glft.legendre.grid_transform import (
    biconjugate_grid,
    check_reverse_order,
    conjugate_grid,
    conjugate_grid_brute,
    conjugate_grid_fast,
    lower_hull,
    slope_axes,
)
from glft.utils.exceptions import DimensionError


def integer_grid(values):
    theta = np.arange(len(values), dtype=float) - len(values) // 2
    return GridFunction((theta,), np.asarray(values, dtype=float), label="g")


class TestLowerHull:
    def test_convex_points_all_kept(self):
        x = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
        assert lower_hull(x, x ** 2).tolist() == [0, 1, 2, 3, 4]

    def test_drops_points_above(self):
        x = np.array([0.0, 1.0, 2.0, 3.0])
        y = np.array([0.0, 5.0, 1.0, 0.0])
        assert lower_hull(x, y).tolist() == [0, 3]

    def test_keeps_collinear(self):
        x = np.array([0.0, 1.0, 2.0, 3.0])
        assert lower_hull(x, np.array([0.0, 1.0, 2.0, 4.0])).tolist() == [0, 1, 2, 3]


class TestBruteForce:
    def test_quadratic(self):
        g = sample(lookup_spec("power-norm{p=2}"), parse_grid_spec("-2:2:401"))
        conj = conjugate_grid_brute(g, parse_grid_spec("-1:1:5"))
        np.testing.assert_allclose(conj.values, 0.5 * conj.axes[0] ** 2, atol=1e-12)

    def test_ties_go_to_first_node(self):
        g = integer_grid([1.0, 0.0, 1.0])
        conj = conjugate_grid_brute(g, [np.array([0.0, 1.0])])
        # eta = 1: theta = 0 and theta = 1 both give 0
        assert conj.argmax.tolist() == [1, 1]
        conj = conjugate_grid_brute(integer_grid([0.0, 0.0, 0.0]), [np.array([0.0, 1.0])])
        assert conj.argmax.tolist() == [0, 2]

    def test_skips_infinite_nodes(self):
        g = integer_grid([math.inf, 0.0, 0.0])
        conj = conjugate_grid_brute(g, [np.array([-5.0, -4.0])])
        assert conj.values.tolist() == [0.0, 0.0]
        assert conj.argmax.tolist() == [1, 1]

    def test_two_dimensional(self):
        g = sample(lookup_spec("power-norm{p=2,m=2}"), parse_grid_spec("-2:2:41,-2:2:41"))
        conj = conjugate_grid_brute(g, parse_grid_spec("-1:1:3,-1:1:3"))
        expected = 0.5 * (conj.axes[0][:, None] ** 2 + conj.axes[1][None, :] ** 2)
        np.testing.assert_allclose(conj.values, expected, atol=1e-12)

    def test_axis_count_mismatch(self):
        g = integer_grid([0.0, 1.0, 4.0])
        with pytest.raises(DimensionError):
            conjugate_grid_brute(g, parse_grid_spec("-1:1:3,-1:1:3"))


class TestFastMatchesBrute:
    """The linear-time transform reproduces the oracle exactly."""

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(min_value=-20, max_value=20), min_size=2, max_size=40),
           st.sets(st.integers(min_value=-40, max_value=40), min_size=2, max_size=30))
    def test_integer_data(self, values, slopes):
        # integer data keeps every product and difference exact
        g = integer_grid(values)
        eta = [np.array(sorted(float(s) / 2.0 for s in slopes))]
        fast = conjugate_grid_fast(g, eta)
        brute = conjugate_grid_brute(g, eta)
        np.testing.assert_array_equal(fast.values, brute.values)
        np.testing.assert_array_equal(fast.argmax, brute.argmax)

    def test_convex_samples(self):
        g = sample(lookup_spec("exp"), parse_grid_spec("-3:3:601"))
        dual = parse_grid_spec("0.1:20:300")
        fast = conjugate_grid_fast(g, dual)
        brute = conjugate_grid_brute(g, dual)
        np.testing.assert_array_equal(fast.values, brute.values)
        np.testing.assert_array_equal(fast.argmax, brute.argmax)

    def test_nonconvex_samples(self):
        theta = np.linspace(-2.0, 2.0, 201)
        g = GridFunction((theta,), np.cos(3 * theta) + theta ** 2, label="wiggle")
        dual = [np.linspace(-4.0, 4.0, 81)]
        fast = conjugate_grid_fast(g, dual)
        brute = conjugate_grid_brute(g, dual)
        np.testing.assert_array_equal(fast.values, brute.values)
        np.testing.assert_array_equal(fast.argmax, brute.argmax)

    def test_sampled_affine_ties(self):
        theta = np.linspace(-50.0, 50.0, 143)
        g = GridFunction((theta,), 2.7028 * theta + 0.1, label="line")
        dual = [np.array([1.0, 2.7028, 4.0])]
        fast = conjugate_grid_fast(g, dual)
        brute = conjugate_grid_brute(g, dual)
        np.testing.assert_array_equal(fast.values, brute.values)
        np.testing.assert_array_equal(fast.argmax, brute.argmax)

    @settings(max_examples=80, deadline=None)
    @given(st.floats(min_value=-5.0, max_value=5.0, allow_nan=False),
           st.floats(min_value=-1.0, max_value=1.0, allow_nan=False),
           st.integers(min_value=2, max_value=300),
           st.floats(min_value=0.1, max_value=60.0))
    def test_affine_samples(self, slope, offset, n, half_width):
        theta = np.linspace(-half_width, half_width, n)
        g = GridFunction((theta,), slope * theta + offset, label="line")
        dual = [np.unique(np.array([slope - 1.0, slope, slope + 1.0]))]
        fast = conjugate_grid_fast(g, dual)
        brute = conjugate_grid_brute(g, dual)
        np.testing.assert_array_equal(fast.values, brute.values)
        np.testing.assert_array_equal(fast.argmax, brute.argmax)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.floats(min_value=-5.0, max_value=5.0, allow_nan=False),
                    min_size=1, max_size=4, unique=True),
           st.lists(st.integers(min_value=0, max_value=3), min_size=1, max_size=80),
           st.floats(min_value=0.01, max_value=2.0))
    def test_collinear_runs(self, run_slopes, picks, step):
        # convex samples made of runs sharing a slope; eta hits each run slope exactly
        slopes = np.sort(np.array([run_slopes[p % len(run_slopes)] for p in picks]))
        theta = step * np.arange(slopes.shape[0] + 1) - 0.37
        values = np.concatenate([[0.0], np.cumsum(slopes * step)])
        g = GridFunction((theta,), values, label="runs")
        dual = [np.unique(np.concatenate([slopes, [slopes[0] - 1.0, slopes[-1] + 1.0]]))]
        fast = conjugate_grid_fast(g, dual)
        brute = conjugate_grid_brute(g, dual)
        np.testing.assert_array_equal(fast.values, brute.values)
        np.testing.assert_array_equal(fast.argmax, brute.argmax)

    def test_fast_is_one_dimensional(self):
        g = sample(lookup_spec("power-norm{p=2,m=2}"), parse_grid_spec("-1:1:3,-1:1:3"))
        with pytest.raises(DimensionError):
            conjugate_grid_fast(g, parse_grid_spec("-1:1:3,-1:1:3"))

    def test_dispatch(self):
        g = sample(lookup_spec("power-norm{p=2,m=2}"), parse_grid_spec("-1:1:3,-1:1:3"))
        assert conjugate_grid(g, parse_grid_spec("-1:1:3,-1:1:3")).dim == 2


class TestBiconjugate:
    def test_convex_sample_is_reproduced(self):
        g = sample(lookup_spec("power-norm{p=2}"), parse_grid_spec("-2:2:41"))
        back = biconjugate_grid(g)
        np.testing.assert_allclose(back.values, g.values, atol=1e-9)

    def test_lower_envelope_of_nonconvex(self):
        theta = np.linspace(-2.0, 2.0, 81)
        values = (theta ** 2 - 1.0) ** 2
        g = GridFunction((theta,), values, label="double-well")
        back = biconjugate_grid(g, [np.linspace(-40.0, 40.0, 2001)])
        assert np.all(back.values <= values + 1e-12)
        # the well between -1 and 1 is filled in
        assert back.values[40] == pytest.approx(0.0, abs=1e-9)

    def test_outside_finite_hull_stays_inf(self):
        theta = np.linspace(-1.0, 1.0, 5)
        g = GridFunction((theta,), np.array([math.inf, 0.0, 0.0, 0.0, math.inf]), label="box")
        back = biconjugate_grid(g)
        assert back.values[0] == math.inf and back.values[-1] == math.inf

    def test_slope_axes_span(self):
        g = sample(lookup_spec("power-norm{p=2}"), parse_grid_spec("-2:2:41"))
        (axis,) = slope_axes(g)
        assert axis[0] == pytest.approx(-1.95)
        assert axis[-1] == pytest.approx(1.95)
        assert axis.shape == (41,)


class TestReverseOrder:
    def test_shift_down_raises_conjugate(self):
        f1 = sample(lookup_spec("exp"), parse_grid_spec("-2:2:81"))
        f2 = GridFunction(f1.axes, f1.values - 1.0, label="exp-1")
        report = check_reverse_order(f1, f2, parse_grid_spec("0.5:5:19"))
        assert report.status == "pass"
        assert report.details['premise'] == "f2<=f1"

    def test_no_premise_is_inconclusive(self):
        theta = np.linspace(-1.0, 1.0, 3)
        f1 = GridFunction((theta,), np.array([0.0, 1.0, 0.0]))
        f2 = GridFunction((theta,), np.array([1.0, 0.0, 1.0]))
        report = check_reverse_order(f1, f2, parse_grid_spec("-1:1:3"))
        assert report.status == "inconclusive"

    def test_axes_must_match(self):
        f1 = sample(lookup_spec("exp"), parse_grid_spec("-2:2:5"))
        f2 = sample(lookup_spec("exp"), parse_grid_spec("-2:2:7"))
        with pytest.raises(DimensionError):
            check_reverse_order(f1, f2, parse_grid_spec("0:1:3"))
