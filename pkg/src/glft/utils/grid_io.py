"""Grid function I/O.

CSV: header ``axis0[,axis1],value`` with one row per node in lexicographic
order; infinities are written as ``inf`` / ``-inf``. JSON mirrors the
same field names as a list of records.
"""
import json
import pathlib
import sys
from typing import Dict, List, Optional, Union

import numpy as np
import pandas as pd

from glft.funcspace.extended import format_extended
from glft.funcspace.grid import GridFunction
from glft.utils.exceptions import FileOperationError

PathLike = Union[str, pathlib.Path]


def grid_frame(grid: GridFunction, extra: Optional[Dict[str, np.ndarray]] = None) -> pd.DataFrame:
    """Tabular view of a grid: one row per node, values as text literals."""
    nodes = grid.nodes()
    columns: Dict[str, List[str]] = {}
    for k in range(grid.dim):
        columns[f"axis{k}"] = [format_extended(x) for x in nodes[:, k]]
    columns["value"] = [format_extended(v) for v in grid.flat_values()]
    for name, column in (extra or {}).items():
        columns[name] = [format_extended(v) for v in np.asarray(column, dtype=float).ravel()]
    return pd.DataFrame(columns)


def grid_to_csv(grid: GridFunction, extra: Optional[Dict[str, np.ndarray]] = None) -> str:
    return grid_frame(grid, extra).to_csv(index=False, lineterminator='\n')


def grid_to_json(grid: GridFunction, extra: Optional[Dict[str, np.ndarray]] = None) -> str:
    records = grid_frame(grid, extra).to_dict(orient='records')
    return json.dumps(records, indent=2)


def infer_format(path: Optional[PathLike], fmt: Optional[str] = None) -> str:
    if fmt:
        return fmt
    return 'json' if path is not None and pathlib.Path(path).suffix == '.json' else 'csv'


def write_artifact(text: str, path: Optional[PathLike]) -> None:
    """Write to `path`, or to stdout when path is None or '-'."""
    if path is None or str(path) == '-':
        sys.stdout.write(text if text.endswith('\n') else text + '\n')
        return
    path = pathlib.Path(path)
    try:
        path.write_text(text, encoding='utf-8')
    except OSError as e:
        raise FileOperationError(f"Could not write {path}: {e}") from e


def write_grid(grid: GridFunction, path: Optional[PathLike], fmt: Optional[str] = None,
               extra: Optional[Dict[str, np.ndarray]] = None) -> None:
    fmt = infer_format(path, fmt)
    text = grid_to_json(grid, extra) if fmt == 'json' else grid_to_csv(grid, extra)
    write_artifact(text, path)


def _frame_to_grid(frame: pd.DataFrame, label: str) -> GridFunction:
    axis_columns = [c for c in ("axis0", "axis1") if c in frame.columns]
    if not axis_columns or "value" not in frame.columns:
        raise FileOperationError("grid data needs columns axis0[,axis1],value")
    numeric = frame[axis_columns + ["value"]].astype(str).apply(
        lambda col: col.str.strip().map(float))
    numeric = numeric.sort_values(axis_columns, kind='mergesort')
    axes = tuple(np.unique(numeric[c].to_numpy()) for c in axis_columns)
    shape = tuple(a.shape[0] for a in axes)
    if int(np.prod(shape)) != len(numeric):
        raise FileOperationError("grid data is not a full rectangular product")
    values = numeric["value"].to_numpy().reshape(shape)
    return GridFunction(axes, values, label=label)


def read_grid(path: PathLike) -> GridFunction:
    """Read a grid written by write_grid (CSV or JSON, by suffix)."""
    path = pathlib.Path(path)
    try:
        if path.suffix == '.json':
            frame = pd.DataFrame(json.loads(path.read_text(encoding='utf-8')))
        else:
            frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except (OSError, ValueError) as e:
        raise FileOperationError(f"Could not read {path}: {e}") from e
    return _frame_to_grid(frame, label=path.stem)


def read_point_pairs(path: PathLike) -> pd.DataFrame:
    """Batch divergence input: columns theta[_k] and eta_prime[_k], one row per pair."""
    try:
        return pd.read_csv(pathlib.Path(path))
    except (OSError, ValueError) as e:
        raise FileOperationError(f"Could not read {path}: {e}") from e
