"""Unit tests for glft.funcspace.grid and glft.utils.grid_io."""
import json
import math

import numpy as np
import pytest

from glft.funcspace.catalog import lookup_spec
from glft.funcspace.grid import AxisSpec, GridFunction, parse_grid_spec, sample
from glft.utils.exceptions import DimensionError, FileOperationError, ParameterError, UsageError
from glft.utils.grid_io import (
    grid_frame,
    grid_to_csv,
    infer_format,
    read_grid,
    read_point_pairs,
    write_artifact,
    write_grid,
)


class TestGridSpec:
    def test_one_axis(self):
        (axis,) = parse_grid_spec("-3:3:601")
        assert (axis.lo, axis.hi, axis.n) == (-3.0, 3.0, 601)
        samples = axis.samples()
        assert samples[0] == -3.0 and samples[-1] == 3.0 and samples.size == 601

    def test_two_axes(self):
        axes = parse_grid_spec("-1:1:3,0:2:5")
        assert [a.n for a in axes] == [3, 5]

    @pytest.mark.parametrize("text", ["-3:3", "a:b:c", "0:1:2,0:1:2,0:1:2"])
    def test_malformed(self, text):
        with pytest.raises(UsageError):
            parse_grid_spec(text)

    def test_needs_increasing_bounds(self):
        with pytest.raises(ParameterError):
            AxisSpec(1.0, 0.0, 5)

    def test_needs_two_points(self):
        with pytest.raises(ParameterError):
            AxisSpec(0.0, 1.0, 1)


class TestGridFunction:
    def test_sample_records_inf_outside_domain(self):
        grid = sample(lookup_spec("neg-log"), parse_grid_spec("-1:1:5"))
        assert grid.values[0] == math.inf
        assert grid.values[-1] == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            sample(lookup_spec("exp"), parse_grid_spec("0:1:3,0:1:3"))

    def test_nodes_lexicographic(self):
        grid = GridFunction((np.array([0.0, 1.0]), np.array([5.0, 6.0])), np.zeros((2, 2)))
        assert grid.nodes().tolist() == [[0, 5], [0, 6], [1, 5], [1, 6]]
        assert grid.node(2).tolist() == [1.0, 5.0]

    def test_rejects_nan(self):
        with pytest.raises(ParameterError):
            GridFunction((np.array([0.0, 1.0]),), np.array([0.0, np.nan]))

    def test_rejects_all_inf(self):
        with pytest.raises(ParameterError):
            GridFunction((np.array([0.0, 1.0]),), np.array([np.inf, np.inf]))

    def test_interpolant(self):
        grid = GridFunction((np.array([0.0, 1.0, 2.0]),), np.array([0.0, 1.0, 4.0]))
        f = grid.as_function()
        assert f.value([1.5]) == pytest.approx(2.5)
        assert f.value([3.0]) == math.inf


class TestGridIO:
    def test_csv_layout(self):
        grid = GridFunction((np.array([0.0, 1.0]),), np.array([np.inf, 2.0]))
        lines = grid_to_csv(grid).strip().splitlines()
        assert lines == ["axis0,value", "0.0,inf", "1.0,2.0"]

    def test_extra_columns(self):
        grid = GridFunction((np.array([0.0, 1.0]),), np.array([1.0, 2.0]))
        frame = grid_frame(grid, {'argmax_theta': np.array([-1.0, np.inf])})
        assert list(frame.columns) == ["axis0", "value", "argmax_theta"]
        assert frame["argmax_theta"].tolist() == ["-1.0", "inf"]

    def test_write_then_read_csv(self, tmp_path):
        grid = sample(lookup_spec("shannon"), parse_grid_spec("-1:2:7"))
        path = tmp_path / "g.csv"
        write_grid(grid, path)
        back = read_grid(path)
        assert np.array_equal(back.values, grid.values)
        assert np.allclose(back.axes[0], grid.axes[0])

    def test_write_then_read_json_2d(self, tmp_path):
        grid = sample(lookup_spec("exp{m=2}"), parse_grid_spec("0:1:3,0:1:2"))
        path = tmp_path / "g.json"
        write_grid(grid, path)
        records = json.loads(path.read_text())
        assert set(records[0]) == {"axis0", "axis1", "value"}
        back = read_grid(path)
        assert back.shape == (3, 2)
        assert np.allclose(back.values, grid.values)

    def test_read_rejects_partial_product(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("axis0,axis1,value\n0,0,1\n0,1,1\n1,0,1\n")
        with pytest.raises(FileOperationError):
            read_grid(path)

    def test_read_missing_file(self, tmp_path):
        with pytest.raises(FileOperationError):
            read_grid(tmp_path / "missing.csv")

    def test_write_artifact_to_stdout(self, capsys):
        write_artifact("a,b", None)
        assert capsys.readouterr().out == "a,b\n"

    def test_infer_format(self):
        assert infer_format("out.json") == "json"
        assert infer_format("out.csv") == "csv"
        assert infer_format(None) == "csv"
        assert infer_format("out.json", "csv") == "csv"

    def test_point_pairs(self, tmp_path):
        path = tmp_path / "pairs.csv"
        path.write_text("theta,eta_prime\n0.5,2\n")
        frame = read_point_pairs(path)
        assert frame["eta_prime"].tolist() == [2]
