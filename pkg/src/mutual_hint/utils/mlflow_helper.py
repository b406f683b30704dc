import logging
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Optional

import mlflow
from dotenv import load_dotenv

logger = logging.getLogger(__name__)


def init(
    tracking_uri: str = "http://localhost:5001", experiment_name: str = "mutual-hint"
):
    load_dotenv()  # Load environment variables from .env file
    mlflow.set_tracking_uri(tracking_uri)
    mlflow.set_experiment(experiment_name)


def _flatten(values: Mapping[str, Any], prefix: str = "") -> Dict[str, Any]:
    flat: Dict[str, Any] = {}
    for key, value in values.items():
        name = f"{prefix}{key}"
        if isinstance(value, Mapping):
            flat.update(_flatten(value, f"{name}."))
        else:
            flat[name] = value
    return flat


def log_run(
    params: Mapping[str, Any],
    metrics: Mapping[str, Any],
    artifacts: Iterable[str | Path] = (),
    run_name: Optional[str] = None,
) -> str:
    """Log one run; non-numeric and missing metrics are skipped."""
    with mlflow.start_run(run_name=run_name) as run:
        mlflow.log_params({k: str(v) for k, v in _flatten(params).items()})
        numeric = {
            k: float(v)
            for k, v in _flatten(metrics).items()
            if isinstance(v, (int, float)) and not isinstance(v, bool)
        }
        mlflow.log_metrics(numeric)
        for path in artifacts:
            if Path(path).exists():
                mlflow.log_artifact(str(path))
        logger.info(f"Logged mlflow run {run.info.run_id}")
        return run.info.run_id
