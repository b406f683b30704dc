"""Writers and the mlflow run logger."""

import json

import numpy as np
import pandas as pd
import pytest
import scipy.sparse as sp

from mutual_hint.errors import ValidationError
from mutual_hint.modules.stiefel_opt.solver import StepRecord
from mutual_hint.utils import io_helper, mlflow_helper


def test_triplets_are_row_major(tmp_path):
    matrix = sp.csr_matrix(np.array([[0, 2], [3, 0]]))
    frame = pd.read_csv(io_helper.write_triplets(matrix, tmp_path / "m.csv", "count"))
    assert frame.values.tolist() == [[0, 1, 2], [1, 0, 3]]
    assert list(frame.columns) == ["row", "col", "count"]


def test_confidence_rows_need_ids(tmp_path):
    with pytest.raises(ValidationError):
        io_helper.write_confidence(np.zeros((2, 2)), ["a"], tmp_path / "h.csv")


def test_trace_columns(tmp_path):
    steps = [StepRecord(0, 1, 2, 0.5, 1e-3, 0.25, 0.6, -1.0)]
    frame = pd.read_csv(io_helper.write_trace(steps, tmp_path / "trace.csv"))
    assert frame.iloc[0].tolist() == [0, 1, 2, 0.5, 1e-3, 0.25]


def test_json_payload_with_numpy_values(tmp_path):
    path = io_helper.write_json({"b": np.int64(2), "a": np.arange(2), "p": tmp_path}, tmp_path / "x.json")
    text = path.read_text()
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text)["a"] == [0, 1]
    with pytest.raises(ValidationError):
        (tmp_path / "bad.json").write_text("{")
        io_helper.read_json(tmp_path / "bad.json")


class _Run:
    class info:
        run_id = "abc"

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def test_log_run_flattens_params_and_skips_missing_metrics(monkeypatch, tmp_path):
    logged = {}
    monkeypatch.setattr(mlflow_helper.mlflow, "start_run", lambda run_name=None: _Run())
    monkeypatch.setattr(mlflow_helper.mlflow, "log_params", lambda p: logged.update(params=p))
    monkeypatch.setattr(mlflow_helper.mlflow, "log_metrics", lambda m: logged.update(metrics=m))
    monkeypatch.setattr(mlflow_helper.mlflow, "log_artifact", lambda p: logged.setdefault("files", []).append(p))
    artifact = tmp_path / "result.json"
    artifact.write_text("{}")

    run_id = mlflow_helper.log_run(
        {"theta": 1.0, "search": {"eta": 0.85}},
        {"d": 16.0, "Nd": None, "rounds": 3, "converged": True},
        [artifact, tmp_path / "missing.csv"],
    )
    assert run_id == "abc"
    assert logged["params"] == {"theta": "1.0", "search.eta": "0.85"}
    assert logged["metrics"] == {"d": 16.0, "rounds": 3.0}
    assert logged["files"] == [str(artifact)]
