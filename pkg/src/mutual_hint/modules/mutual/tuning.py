"""Theta selection by anchor hold-out."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np

from mutual_hint.config import SearchParams
from mutual_hint.errors import ConfigError
from mutual_hint.modules.corpus.anchors import AnchorSet
from mutual_hint.modules.corpus.documents import CorpusPair
from mutual_hint.modules.eval.metrics import anchor_agreement
from mutual_hint.modules.mutual.pipeline import PreparedCorpus, prepare, run_hint

logger = logging.getLogger(__name__)

DEFAULT_HOLDOUT = 0.2


@dataclass(frozen=True)
class ThetaTuning:
    best_theta: float
    scores: Dict[float, float]
    held_out: AnchorSet


def split_anchors(anchors: AnchorSet, holdout: float, seed: int) -> tuple[AnchorSet, AnchorSet]:
    """(kept, held_out) with round(holdout * |R|) pairs held out, at least one."""
    if not 0 < holdout < 1:
        raise ConfigError(f"holdout fraction must lie in (0, 1), got {holdout}")
    if anchors.size < 2:
        raise ConfigError(f"theta tuning needs at least 2 anchors, got {anchors.size}")
    order = np.random.default_rng(seed).permutation(anchors.size)
    n_held = min(max(1, int(round(holdout * anchors.size))), anchors.size - 1)
    return anchors.subset(order[n_held:].tolist()), anchors.subset(order[:n_held].tolist())


def tune_theta(
    corpus: CorpusPair | PreparedCorpus,
    k1: int,
    k2: int,
    thetas: Sequence[float],
    seed: int = 0,
    holdout: float = DEFAULT_HOLDOUT,
    params: Optional[SearchParams] = None,
    **run_options,
) -> ThetaTuning:
    """Pick the theta whose clustering best predicts held-out anchors.

    Each theta is scored by the share of held-out anchors whose news cluster
    is the majority partner of their tweet cluster on the kept anchors. Ties
    go to the earliest theta of the grid.
    """
    if not thetas:
        raise ConfigError("theta grid is empty")
    prepared = corpus if isinstance(corpus, PreparedCorpus) else prepare(
        corpus,
        run_options.pop("weights1", None),
        run_options.pop("weights2", None),
        run_options.pop("min_common", 1),
        run_options.pop("split_retweet", False),
        run_options.pop("threads", None),
    )
    kept, held = split_anchors(prepared.anchors, holdout, seed)
    if any(t > 0 for t in thetas) and kept.size < 2:
        raise ConfigError(f"only {kept.size} anchor(s) left after hold-out")
    training = prepared.with_anchors(kept)

    scores: Dict[float, float] = {}
    for theta in thetas:
        result = run_hint(training, k1, k2, theta=theta, seed=seed, params=params, **run_options)
        scores[float(theta)] = anchor_agreement(result.labels1, result.labels2, held, reference=kept)
        logger.info(f"theta={theta}: held-out anchor agreement {scores[float(theta)]:.4f}")

    best = max(scores, key=lambda t: (scores[t], -list(scores).index(t)))
    return ThetaTuning(best_theta=best, scores=scores, held_out=held)
