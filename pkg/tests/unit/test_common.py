"""Unit tests for the shared verb helpers."""
import math

import pytest

from glft.commands.common import grid_arrays, load_params, load_vector, tabulate_conjugate
from glft.funcspace.catalog import lookup_spec
from glft.utils.exceptions import FileOperationError, UsageError


class TestLoadParams:
    def test_literal(self, example_params_literal):
        P = load_params(example_params_literal)
        assert P.lam == 2.0
        assert P.b.tolist() == [1.0]

    def test_at_file(self, tmp_path, example_params_literal):
        path = tmp_path / "p.json"
        path.write_text(example_params_literal)
        assert load_params(f"@{path}").d == 5.0

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileOperationError):
            load_params(f"@{tmp_path / 'absent.json'}")

    def test_unknown_key(self):
        with pytest.raises(UsageError):
            load_params('{"lambda":1,"A":[[1]],"b":[0],"c":[0],"e":1}')


class TestVectors:
    def test_scalar_and_list(self):
        assert load_vector("0.5", "theta").tolist() == [0.5]
        assert load_vector("[1, 2]", "theta").tolist() == [1.0, 2.0]

    def test_grid_dimension_check(self):
        assert len(grid_arrays("-1:1:3,0:1:2", 2)) == 2
        with pytest.raises(UsageError, match="2 axes"):
            grid_arrays("-1:1:3,0:1:2", 1)


class TestTabulate:
    def test_out_of_range_reads_inf(self):
        conj = tabulate_conjugate(lookup_spec("exp"), "newton", grid_arrays("-1:2:2"))
        values = conj.flat_values()
        assert values[0] == math.inf
        assert values[1] == pytest.approx(2.0 * math.log(2.0) - 2.0)
