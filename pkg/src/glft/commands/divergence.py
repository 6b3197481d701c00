"""
glft divergence - Bregman and Fenchel-Young readings of one divergence.

Usage:
    glft divergence --fn exp --theta 0.5 --eta-prime 2
    glft divergence --fn quadratic-form{m=2} --theta '[1,0]' --eta-prime '[0,1]' --engine newton
    glft divergence --fn exp --batch pairs.csv --format csv --out divergences.csv

For F with gradient links eta = grad F(theta) and theta' = grad F*(eta'),
prints Y(theta : eta'), B_F(theta : theta') and B_F*(eta' : eta). With
--P the affine-invariance identity is checked at the same two points.
"""
import argparse
import json
import re
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from glft.commands.common import (
    add_engine_argument,
    add_fn_argument,
    add_output_arguments,
    load_params,
    load_vector,
)
from glft.core.base_command import CliCommand
from glft.deform.params import DeformParams
from glft.divergence.divergences import divergence_report
from glft.divergence.invariance import invariance_check
from glft.divergence.points import dual_point, dual_point_from_eta
from glft.funcspace.catalog import lookup_spec
from glft.legendre.pair import ConjugatePair, conjugate_pair
from glft.utils.exceptions import FileOperationError, NumericError, UsageError
from glft.utils.grid_io import infer_format, read_point_pairs, write_artifact
from glft.utils.logging import log_success, log_warning
from glft.verification.report import jsonable


def vector_columns(frame: pd.DataFrame, prefix: str) -> List[str]:
    """`prefix` alone, or `prefix_0, prefix_1, ...` in index order."""
    if prefix in frame.columns:
        return [prefix]
    pattern = re.compile(rf"^{re.escape(prefix)}_(\d+)$")
    indexed = [(int(m.group(1)), c) for c in frame.columns if (m := pattern.match(str(c)))]
    if not indexed:
        raise FileOperationError(f"batch file has no '{prefix}' or '{prefix}_k' columns")
    return [c for _, c in sorted(indexed)]


def evaluate_pair(pair: ConjugatePair, theta: np.ndarray, eta_prime: np.ndarray,
                  P: Optional[DeformParams] = None) -> Dict[str, Any]:
    result = divergence_report(pair, theta, eta_prime).to_dict()
    if P is not None:
        p = dual_point(pair.primal, theta)
        q = dual_point_from_eta(pair.dual, eta_prime)
        result['invariance'] = invariance_check(pair.primal, P, p, q, engine=pair.engine).to_dict()
    return result


class DivergenceCommand(CliCommand):
    name = "divergence"

    def get_description(self) -> str:
        return "Compare the Bregman and Fenchel-Young forms of the canonical divergence"

    def get_epilog(self) -> Optional[str]:
        return '''
Examples:
  glft divergence --fn exp --theta 0.5 --eta-prime 2
  glft divergence --fn power-norm{p=3} --theta 1 --eta-prime 0.5 --P @params.json
  glft divergence --fn exp --batch pairs.csv --format csv

Batch files have columns theta[_k] and eta_prime[_k], one row per pair.
        '''

    def setup_arguments(self) -> None:
        add_fn_argument(self.parser)
        add_engine_argument(self.parser)
        self.parser.add_argument(
            '--theta',
            metavar='JSON',
            help='Primal point theta (number or list)'
        )
        self.parser.add_argument(
            '--eta-prime',
            metavar='JSON',
            help='Dual point eta\' (number or list)'
        )
        self.parser.add_argument(
            '--batch',
            metavar='CSV',
            help='Evaluate every (theta, eta_prime) row of a CSV file'
        )
        self.parser.add_argument(
            '--P',
            dest='params',
            metavar='JSON',
            help='Also check affine invariance under this deformation'
        )
        add_output_arguments(self.parser)

    def _batch(self, pair: ConjugatePair, path: str,
               P: Optional[DeformParams]) -> List[Dict[str, Any]]:
        frame = read_point_pairs(path)
        theta_cols = vector_columns(frame, 'theta')
        eta_cols = vector_columns(frame, 'eta_prime')
        if len(theta_cols) != pair.dim or len(eta_cols) != pair.dim:
            raise UsageError(f"batch columns do not match the {pair.dim}-D function")
        results = []
        for row, (_, record) in enumerate(frame.iterrows()):
            theta = record[theta_cols].to_numpy(dtype=float)
            eta_prime = record[eta_cols].to_numpy(dtype=float)
            try:
                results.append({'row': row, **evaluate_pair(pair, theta, eta_prime, P)})
            except NumericError as e:
                log_warning(f"row {row}: {e}")
                results.append({'row': row, 'error': str(e), 'agrees': False,
                                'inputs': {'theta': theta.tolist(), 'eta_prime': eta_prime.tolist()}})
        return results

    def _render(self, results: List[Dict[str, Any]], fmt: str, single: bool) -> str:
        if fmt == 'json':
            payload = results[0] if single else results
            return json.dumps(jsonable(payload), indent=2, sort_keys=True)
        rows = []
        for result in results:
            inputs = result.get('inputs', {})
            row: Dict[str, Any] = {}
            for key in ('theta', 'eta_prime'):
                for k, x in enumerate(inputs.get(key, [])):
                    row[f"{key}_{k}"] = x
            for key in ('bregman_primal', 'bregman_dual', 'fenchel_young', 'max_discrepancy'):
                row[key] = result.get(key, np.nan)
            row['agrees'] = result.get('agrees', False)
            if 'invariance' in result:
                row['invariance'] = result['invariance']['status']
            rows.append(row)
        return pd.DataFrame(rows).to_csv(index=False, lineterminator='\n')

    def execute(self, args: argparse.Namespace) -> int:
        if args.batch and (args.theta or args.eta_prime):
            raise UsageError("use either --batch or --theta/--eta-prime")
        if not args.batch and not (args.theta and args.eta_prime):
            raise UsageError("--theta and --eta-prime are required without --batch")

        f = lookup_spec(args.fn)
        pair = conjugate_pair(f, args.engine)
        P = load_params(args.params) if args.params else None
        if P is not None and P.dim != f.dim:
            raise UsageError(f"P is {P.dim}-D but {f.label} is {f.dim}-D")

        if args.batch:
            results = self._batch(pair, args.batch, P)
            fmt = infer_format(args.out, args.format)
        else:
            theta = load_vector(args.theta, "theta")
            eta_prime = load_vector(args.eta_prime, "eta_prime")
            results = [evaluate_pair(pair, theta, eta_prime, P)]
            fmt = args.format or 'json'
        write_artifact(self._render(results, fmt, single=not args.batch), args.out)

        disagreeing = [r for r in results if not r.get('agrees', False)
                       or r.get('invariance', {}).get('status', 'pass') == 'fail']
        if disagreeing:
            log_warning(f"{len(disagreeing)} of {len(results)} evaluations disagree beyond tolerance")
            return 1
        log_success(f"{len(results)} divergence evaluation(s) agree")
        return 0


def main():
    return DivergenceCommand().run()


if __name__ == '__main__':
    raise SystemExit(main())
