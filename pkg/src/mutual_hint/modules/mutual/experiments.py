"""Seeded sweeps over theta and the anchored rate on synthetic corpora."""

from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from mutual_hint.config import SearchParams, SynthConfig
from mutual_hint.errors import ConfigError
from mutual_hint.modules.eval.metrics import evaluate
from mutual_hint.modules.mutual.pipeline import prepare, run_hint, run_single
from mutual_hint.modules.synth.generator import generate

logger = logging.getLogger(__name__)

SWEEP_PARAMETERS = ("theta", "anchor_rate")


def parse_range(spec: str) -> List[float]:
    """'start:step:stop' (stop inclusive) or a comma-separated list."""
    if ":" not in spec:
        try:
            return [float(v) for v in spec.split(",") if v.strip()]
        except ValueError as e:
            raise ConfigError(f"bad value list '{spec}'") from e
    try:
        start, step, stop = (float(v) for v in spec.split(":"))
    except ValueError as e:
        raise ConfigError(f"range must be 'start:step:stop', got '{spec}'") from e
    if step <= 0 or stop < start:
        raise ConfigError(f"empty or unbounded range '{spec}'")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def parse_sweep(spec: str) -> tuple[str, List[float]]:
    """'theta=0:0.25:2' -> ('theta', [0.0, 0.25, ...])."""
    name, sep, values = spec.partition("=")
    name = name.strip().replace("-", "_")
    if not sep or name not in SWEEP_PARAMETERS:
        raise ConfigError(f"sweep must be one of {SWEEP_PARAMETERS} as name=start:step:stop")
    return name, parse_range(values)


def _row(parameter: str, value: float, seed: int, labels1, labels2, data, baseline=None) -> Dict:
    report = evaluate(labels1, labels2, data.truth1, data.truth2)
    row = {
        "parameter": parameter,
        "value": value,
        "seed": seed,
        "nmi1": report.nmi1,
        "nmi2": report.nmi2,
        "f1_1": report.f1_1,
        "f1_2": report.f1_2,
    }
    if baseline is not None:
        reference = evaluate(baseline[0], baseline[1], data.truth1, data.truth2)
        row["baseline_nmi1"] = reference.nmi1
        row["baseline_nmi2"] = reference.nmi2
    return row


def theta_sweep(
    synth: SynthConfig,
    thetas: Sequence[float],
    seeds: Sequence[int],
    k1: Optional[int] = None,
    k2: Optional[int] = None,
    params: Optional[SearchParams] = None,
) -> pd.DataFrame:
    """One row per (theta, seed), with the decoupled spectral baseline alongside."""
    k1 = k1 or synth.k
    k2 = k2 or synth.k
    rows = []
    for seed in seeds:
        data = generate(synth.model_copy(update={"seed": seed}))
        prepared = prepare(data.corpus)
        baseline = (
            run_single(prepared.tweets, k1, seed, params)[0],
            run_single(prepared.news, k2, seed, params)[0],
        )
        for theta in thetas:
            if theta > 0 and prepared.anchors.size < 2:
                logger.warning(f"seed {seed}: fewer than 2 anchors, skipping theta={theta}")
                continue
            result = run_hint(prepared, k1, k2, theta=theta, seed=seed, params=params)
            rows.append(_row("theta", theta, seed, result.labels1, result.labels2, data, baseline))
    return pd.DataFrame(rows)


def anchor_rate_sweep(
    synth: SynthConfig,
    rates: Sequence[float],
    seeds: Sequence[int],
    theta: float = 1.0,
    k1: Optional[int] = None,
    k2: Optional[int] = None,
    params: Optional[SearchParams] = None,
) -> pd.DataFrame:
    """One row per (anchored rate, seed); the documents' texts do not depend on the rate."""
    k1 = k1 or synth.k
    k2 = k2 or synth.k
    rows = []
    for rate in rates:
        for seed in seeds:
            data = generate(synth.model_copy(update={"seed": seed, "anchor_rate": rate}))
            prepared = prepare(data.corpus)
            effective = theta if prepared.anchors.size >= 2 else 0.0
            result = run_hint(prepared, k1, k2, theta=effective, seed=seed, params=params)
            rows.append(_row("anchor_rate", rate, seed, result.labels1, result.labels2, data))
    return pd.DataFrame(rows)


def summarize(rows: pd.DataFrame) -> pd.DataFrame:
    """Mean and standard deviation of every metric per swept value."""
    metrics = [c for c in rows.columns if c not in ("parameter", "value", "seed")]
    summary = rows.groupby(["parameter", "value"], sort=True)[metrics].agg(["mean", "std"])
    summary.columns = [f"{metric}_{stat}" for metric, stat in summary.columns]
    return summary.reset_index()
