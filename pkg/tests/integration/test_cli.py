"""End-to-end tests for the glft command line."""
import io
import json
import math

import pandas as pd
import pytest

from glft.cli import COMMANDS, build_parser, parse_tolerance, run
from glft.utils.exceptions import UsageError
from glft.utils.grid_io import write_grid
from glft.funcspace.catalog import lookup_spec
from glft.funcspace.grid import parse_grid_spec, sample


def stdout_frame(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text))


class TestDispatcher:
    def test_verbs(self):
        assert set(COMMANDS) == {'conjugate', 'deform', 'diamond', 'verify', 'divergence', 'plotdata'}

    def test_no_verb_prints_help(self, capsys):
        assert run([]) == 2
        assert "usage: glft" in capsys.readouterr().err

    def test_unknown_verb(self, capsys):
        assert run(['transform']) == 2

    def test_list_functions(self, capsys):
        assert run(['--list-functions']) == 0
        names = capsys.readouterr().out.split()
        assert 'exp' in names and 'rockafellar-2d' in names

    def test_version(self, capsys):
        assert run(['--version']) == 0
        assert "glft" in capsys.readouterr().out

    def test_global_options_before_verb(self):
        args = build_parser().parse_args(['-v', '--tol', 'subdiff=1e-3', 'verify', 'subdiff'])
        assert args.verbose
        assert args.tol == ['subdiff=1e-3']
        assert args.command == 'verify'
        assert args.args == ['subdiff']

    @pytest.mark.parametrize("text", ["subdiff", "=1", "subdiff=abc"])
    def test_bad_tolerance(self, text):
        with pytest.raises(UsageError):
            parse_tolerance(text)

    def test_bad_tolerance_exit_code(self, capsys):
        assert run(['--tol', 'oops', 'verify', 'subdiff']) == 2


class TestDiamond:
    def test_worked_example(self, capsys, example_params_literal):
        assert run(['diamond', '--P', example_params_literal]) == 0
        assert json.loads(capsys.readouterr().out) == {
            "lambda": 2.0, "A": [[0.25]], "b": [-0.75], "c": [-0.5], "d": -3.5}

    def test_from_file(self, capsys, tmp_path, example_params_literal):
        path = tmp_path / "params.json"
        path.write_text(example_params_literal)
        assert run(['diamond', '--P', f'@{path}', '--check']) == 0
        captured = capsys.readouterr()
        assert json.loads(captured.out)['d'] == -3.5
        assert "matches P" in captured.err

    def test_invalid_literal(self, capsys):
        assert run(['diamond', '--P', '{"lambda":0,"A":[[1]],"b":[0],"c":[0]}']) == 2
        err = capsys.readouterr().err
        assert '"exit_code": 2' in err

    def test_singular_matrix_is_numeric(self, capsys):
        literal = '{"lambda":1,"A":[[1,2],[2,4]],"b":[0,0],"c":[0,0]}'
        assert run(['diamond', '--P', literal]) == 3


class TestConjugate:
    def test_closed_form_table(self, capsys):
        assert run(['conjugate', '--fn', 'exp', '--grid', '0.5:2:4']) == 0
        frame = stdout_frame(capsys.readouterr().out)
        assert list(frame.columns) == ['axis0', 'value']
        for eta, value in zip(frame['axis0'], frame['value']):
            assert value == pytest.approx(eta * math.log(eta) - eta)

    def test_out_of_domain_is_inf(self, capsys):
        assert run(['conjugate', '--fn', 'exp', '--grid', '-1:1:3', '--format', 'json']) == 0
        records = json.loads(capsys.readouterr().out)
        assert records[0]['value'] == "inf"
        assert records[1]['value'] == "0.0"

    def test_grid_fast_reports_argmax(self, capsys):
        assert run(['conjugate', '--fn', 'power-norm{p=2}', '--grid', '-2:2:401',
                    '--engine', 'grid-fast', '--dual', '-1:1:5']) == 0
        frame = stdout_frame(capsys.readouterr().out)
        assert list(frame.columns) == ['axis0', 'value', 'argmax_theta']
        for eta, value, theta in zip(frame['axis0'], frame['value'], frame['argmax_theta']):
            assert value == pytest.approx(0.5 * eta ** 2, abs=1e-12)
            assert theta == pytest.approx(eta, abs=1e-12)

    def test_from_grid_file(self, capsys, tmp_path):
        path = tmp_path / "samples.csv"
        write_grid(sample(lookup_spec("power-norm{p=2}"), parse_grid_spec("-2:2:41")), path)
        out = tmp_path / "conj.json"
        assert run(['conjugate', '--from-grid', str(path), '--out', str(out)]) == 0
        records = json.loads(out.read_text())
        assert len(records) == 41
        assert {'axis0', 'value', 'argmax_theta'} <= set(records[0])

    def test_from_grid_needs_grid_engine(self, tmp_path):
        path = tmp_path / "samples.csv"
        write_grid(sample(lookup_spec("exp"), parse_grid_spec("-1:1:5")), path)
        assert run(['conjugate', '--from-grid', str(path), '--engine', 'newton']) == 2

    def test_fn_needs_grid(self):
        assert run(['conjugate', '--fn', 'exp']) == 2

    def test_no_closed_form(self, capsys):
        assert run(['conjugate', '--fn', 'rockafellar-2d', '--grid', '-1:1:3,-1:1:3']) == 3

    def test_unknown_function(self, capsys):
        assert run(['conjugate', '--fn', 'nope', '--grid', '-1:1:3']) == 2


class TestDeform:
    def test_json_output(self, capsys, example_params_literal):
        assert run(['deform', '--fn', 'exp', '--P', example_params_literal,
                    '--grid', '0:1:2', '--format', 'json']) == 0
        records = json.loads(capsys.readouterr().out)
        assert float(records[0]['value']) == pytest.approx(2.0 * math.e + 5.0)
        assert float(records[1]['value']) == pytest.approx(2.0 * math.exp(3.0) + 3.0 + 5.0)

    def test_dimension_mismatch(self, example_params_literal):
        assert run(['deform', '--fn', 'exp{m=2}', '--P', example_params_literal,
                    '--grid', '0:1:2,0:1:2']) == 2


class TestVerify:
    def test_pass(self, capsys):
        assert run(['verify', 'involution', '--P-random', '20', '--seed', '4']) == 0
        captured = capsys.readouterr()
        report = json.loads(captured.out)
        assert report['status'] == "pass"
        assert report['samples'] == 40
        assert "involution: pass" in captured.err

    def test_theorem_with_fixed_parameters(self, capsys, example_params_literal):
        assert run(['verify', 'theorem', '--fn', 'quadratic', '--P', example_params_literal]) == 0
        assert json.loads(capsys.readouterr().out)['status'] == "pass"

    def test_theorem_with_random_parameters(self, capsys):
        assert run(['verify', 'theorem', '--fn', 'quadratic', '--P-random', '20', '--seed', '7']) == 0
        report = json.loads(capsys.readouterr().out)
        assert report['status'] == "pass"
        assert report['tolerance'] == pytest.approx(1e-9)

    def test_fail_exit_code(self, capsys):
        assert run(['--tol', 'subdiff=1e-12', 'verify', 'subdiff']) == 1
        assert json.loads(capsys.readouterr().out)['status'] == "fail"

    def test_out_writes_a_copy(self, capsys, tmp_path):
        out = tmp_path / "report.json"
        assert run(['verify', 'subdiff', '--out', str(out)]) == 0
        assert json.loads(out.read_text()) == json.loads(capsys.readouterr().out)

    def test_bad_dims(self):
        assert run(['verify', 'involution', '--dims', 'one']) == 2

    def test_unknown_suite(self):
        assert run(['verify', 'everything']) == 2


class TestDivergence:
    def test_single_pair(self, capsys):
        assert run(['divergence', '--fn', 'exp', '--theta', '0.5', '--eta-prime', '2']) == 0
        result = json.loads(capsys.readouterr().out)
        expected = math.exp(0.5) + 2 * math.log(2.0) - 2.0 - 1.0
        assert result['agrees'] is True
        for key in ('bregman_primal', 'bregman_dual', 'fenchel_young'):
            assert result[key] == pytest.approx(expected)

    def test_with_invariance(self, capsys, example_params_literal):
        assert run(['divergence', '--fn', 'exp', '--theta', '0.5', '--eta-prime', '2',
                    '--P', example_params_literal]) == 0
        assert json.loads(capsys.readouterr().out)['invariance']['status'] == "pass"

    def test_batch_with_bad_row(self, capsys, tmp_path):
        path = tmp_path / "pairs.csv"
        path.write_text("theta,eta_prime\n0.5,2\n0.0,1\n0.5,-1\n")
        assert run(['divergence', '--fn', 'exp', '--batch', str(path)]) == 1
        frame = stdout_frame(capsys.readouterr().out)
        assert frame['agrees'].tolist() == [True, True, False]
        assert frame['theta_0'].tolist() == [0.5, 0.0, 0.5]

    def test_batch_and_point_are_exclusive(self, tmp_path):
        path = tmp_path / "pairs.csv"
        path.write_text("theta,eta_prime\n0.5,2\n")
        assert run(['divergence', '--fn', 'exp', '--batch', str(path), '--theta', '1']) == 2

    def test_needs_points(self):
        assert run(['divergence', '--fn', 'exp', '--theta', '1']) == 2


class TestPlotData:
    def test_kink(self, capsys):
        assert run(['plotdata', '--fn', 'power-norm{p=1}', '--grid', '-1:1:3',
                    '--with-subgradients']) == 0
        frame = stdout_frame(capsys.readouterr().out)
        assert list(frame.columns) == ['axis0', 'value', 'subgrad_lower', 'subgrad_upper']
        assert frame['subgrad_lower'][1] == pytest.approx(-1.0)
        assert frame['subgrad_upper'][1] == pytest.approx(1.0)

    def test_with_conjugate(self, capsys):
        assert run(['plotdata', '--fn', 'exp-abs', '--grid', '-2:2:5', '--with-conjugate']) == 0
        frame = stdout_frame(capsys.readouterr().out)
        assert list(frame.columns) == ['axis0', 'value', 'eta', 'conjugate']
        eta = frame['eta'][4]
        assert frame['conjugate'][4] == pytest.approx((1 + eta) * math.log1p(eta) - eta)

    def test_dual_grid_size_must_match(self):
        assert run(['plotdata', '--fn', 'exp', '--grid', '-1:1:5', '--with-conjugate',
                    '--dual', '0.1:1:4']) == 2


class TestUsageExamples:
    """The command lines shown in the README run as written."""

    def test_conjugate_to_file(self, capsys, tmp_path):
        out = tmp_path / "conj.csv"
        assert run(['conjugate', '--fn', 'exp', '--grid', '-3:3:601',
                    '--engine', 'grid-fast', '--out', str(out)]) == 0
        frame = pd.read_csv(out)
        assert len(frame) == 601
        assert list(frame.columns) == ['axis0', 'value', 'argmax_theta']
        eta = frame['axis0'][300]
        assert frame['value'][300] == pytest.approx(eta * math.log(eta) - eta, abs=1e-3)

    def test_diamond(self, capsys):
        assert run(['diamond', '--P', '{"lambda":2,"A":[[2]],"b":[1],"c":[3],"d":5}']) == 0
        assert json.loads(capsys.readouterr().out)['A'] == [[0.25]]

    def test_verify_theorem(self, capsys):
        assert run(['verify', 'theorem', '--fn', 'quadratic', '--P-random', '100', '--seed', '7']) == 0
        report = json.loads(capsys.readouterr().out)
        assert report['status'] == "pass"

    def test_plotdata(self, capsys):
        assert run(['plotdata', '--fn', 'exp-abs', '--with-conjugate', '--with-subgradients',
                    '--grid', '-3:3:601']) == 0
        frame = stdout_frame(capsys.readouterr().out)
        assert len(frame) == 601
        assert {'axis0', 'value', 'eta', 'conjugate', 'subgrad_lower', 'subgrad_upper'} <= set(frame.columns)
