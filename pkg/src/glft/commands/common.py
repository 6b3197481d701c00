"""Argument helpers shared by the glft verbs."""
import argparse
import math
import pathlib
from typing import Optional, Sequence

import numpy as np

from glft.deform.params import DeformParams, params_from_literal
from glft.funcspace.grid import GridFunction, parse_grid_spec
from glft.legendre.engines import ENGINE_NAMES, get_engine
from glft.utils.exceptions import FileOperationError, OutOfRangeError, UsageError
from glft.utils.parsing import parse_json_literal


def add_fn_argument(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument(
        '--fn',
        required=required,
        metavar='SPEC',
        help='Catalog function, e.g. exp, power-norm{p=3}, quadratic-form{m=2}'
    )


def add_engine_argument(parser: argparse.ArgumentParser, default: Optional[str] = 'closed',
                        help_text: Optional[str] = None) -> None:
    parser.add_argument(
        '--engine',
        choices=ENGINE_NAMES,
        default=default,
        help=help_text or f'Conjugation engine (default: {default})'
    )


def add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        '--out',
        metavar='PATH',
        help='Output file (default: stdout)'
    )
    parser.add_argument(
        '--format',
        choices=['csv', 'json'],
        help='Output format (default: by --out suffix, else csv)'
    )


def load_params(text: str) -> DeformParams:
    """--P literal: {"lambda":..,"A":[[..]],"b":[..],"c":[..],"d":..}, or @path to a JSON file."""
    if text.startswith('@'):
        path = pathlib.Path(text[1:]).expanduser()
        try:
            text = path.read_text(encoding='utf-8')
        except OSError as e:
            raise FileOperationError(f"Could not read {path}: {e}") from e
    return params_from_literal(parse_json_literal(text, "P literal"))


def load_vector(text: str, what: str) -> np.ndarray:
    """A JSON number or list given on the command line."""
    value = parse_json_literal(text, what)
    return np.atleast_1d(np.asarray(value, dtype=float))


def grid_arrays(text: str, dim: Optional[int] = None) -> Sequence[np.ndarray]:
    axes = parse_grid_spec(text)
    if dim is not None and len(axes) != dim:
        raise UsageError(f"the function is {dim}-D but the grid has {len(axes)} axes")
    return tuple(spec.samples() for spec in axes)


def tabulate_conjugate(f, engine_name: str, arrays: Sequence[np.ndarray]) -> GridFunction:
    """Pointwise engine values of L F on a dual grid; out of range reads +inf."""
    engine = get_engine(engine_name)
    mesh = np.meshgrid(*arrays, indexing='ij')
    nodes = np.stack([g.ravel() for g in mesh], axis=1)
    values = np.empty(nodes.shape[0])
    for i, eta in enumerate(nodes):
        try:
            values[i] = engine.evaluate(f, eta)
        except OutOfRangeError:
            values[i] = math.inf
    shape = tuple(a.shape[0] for a in arrays)
    return GridFunction(tuple(arrays), values.reshape(shape), label=f"conjugate({f.label})")
