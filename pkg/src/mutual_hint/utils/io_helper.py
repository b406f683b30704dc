"""CSV and JSON writers for matrices, traces and reports."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, List, Mapping, Sequence

import numpy as np
import pandas as pd
import scipy.sparse as sp

from mutual_hint.errors import ValidationError

DENSE_EXPORT_LIMIT = 2000
TRACE_COLUMNS = ["round", "half", "iter", "objective", "grad_norm", "tau"]


def _prepare(path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_triplets(matrix: sp.spmatrix, path: str | Path, value_name: str = "value") -> Path:
    """Sparse matrix as ``row,col,<value_name>`` rows in row-major order."""
    coo = sp.csr_matrix(matrix)
    coo.sort_indices()
    coo = coo.tocoo()
    frame = pd.DataFrame({"row": coo.row, "col": coo.col, value_name: coo.data})
    path = _prepare(path)
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def write_dense(matrix: np.ndarray | sp.spmatrix, path: str | Path) -> Path:
    dense = matrix.toarray() if sp.issparse(matrix) else np.asarray(matrix)
    frame = pd.DataFrame(dense, columns=[f"c{j}" for j in range(dense.shape[1])])
    path = _prepare(path)
    frame.to_csv(path, index=False, lineterminator="\n", float_format="%.17g")
    return path


def write_matrix(matrix: sp.spmatrix, path: str | Path) -> Path:
    """Dense CSV up to DENSE_EXPORT_LIMIT rows, sparse triplets beyond."""
    if matrix.shape[0] <= DENSE_EXPORT_LIMIT:
        return write_dense(matrix, path)
    return write_triplets(matrix, path)


def write_confidence(H: np.ndarray, ids: Sequence[str], path: str | Path) -> Path:
    if len(ids) != H.shape[0]:
        raise ValidationError(f"{len(ids)} ids for a confidence matrix with {H.shape[0]} rows")
    frame = pd.DataFrame(H, columns=[f"cluster_{j}" for j in range(H.shape[1])])
    frame.insert(0, "id", list(ids))
    path = _prepare(path)
    frame.to_csv(path, index=False, lineterminator="\n", float_format="%.17g")
    return path


def write_trace(steps: Sequence[Any], path: str | Path) -> Path:
    rows: List[dict] = [{c: getattr(s, c) for c in TRACE_COLUMNS} for s in steps]
    frame = pd.DataFrame(rows, columns=TRACE_COLUMNS)
    path = _prepare(path)
    frame.to_csv(path, index=False, lineterminator="\n", float_format="%.17g")
    return path


def _default(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps_json(payload: Mapping[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, default=_default)


def write_json(payload: Mapping[str, Any], path: str | Path) -> Path:
    path = _prepare(path)
    path.write_text(dumps_json(payload) + "\n", encoding="utf-8")
    return path


def read_json(path: str | Path) -> dict:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"file not found: {path}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path}: malformed JSON ({e.msg})") from e


def write_table(frame: pd.DataFrame, path: str | Path) -> Path:
    path = _prepare(path)
    frame.to_csv(path, index=False, lineterminator="\n")
    return path
