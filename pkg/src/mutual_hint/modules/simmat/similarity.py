"""Meta-path based document similarity (weighted, pairwise-normalized path counts)."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from mutual_hint.errors import ConfigError, ValidationError
from mutual_hint.modules.hin.count_matrix import CountMatrix

logger = logging.getLogger(__name__)

WEIGHT_SUM_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SimMatrix:
    S: sp.csr_matrix
    weights: np.ndarray
    meta_path_ids: Tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return self.S.shape[0]

    def dense(self) -> np.ndarray:
        return self.S.toarray()


def validate_weights(weights: Sequence[float], expected: int) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size != expected:
        raise ConfigError(f"expected {expected} meta-path weights, got {w.size}")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise ConfigError(f"meta-path weights must be finite and non-negative, got {w.tolist()}")
    if abs(w.sum() - 1.0) > WEIGHT_SUM_TOLERANCE:
        raise ConfigError(f"meta-path weights must sum to 1, got {w.sum()!r}")
    return w


def _check_counts(counts: Sequence[CountMatrix]) -> int:
    if not counts:
        raise ValidationError("at least one count matrix is required")
    n = counts[0].n
    if any(c.n != n for c in counts):
        raise ValidationError("count matrices belong to collections of different sizes")
    sides = {c.meta_path.side for c in counts}
    if len(sides) != 1:
        raise ValidationError("count matrices mix meta-paths of both collections")
    return n


def hint_similarity(x: int, y: int, counts: Sequence[CountMatrix], weights: Sequence[float]) -> float:
    """Sim(x, y) = sum_i w_i (A_i(x,y) + A_i(y,x)) / (|P_i(x ~ .)| + |P_i(y ~ .)|)."""
    n = _check_counts(counts)
    w = validate_weights(weights, len(counts))
    if not (0 <= x < n and 0 <= y < n):
        raise ValidationError(f"document indices ({x}, {y}) out of range for n={n}")

    total = 0.0
    for c, w_i in zip(counts, w):
        denominator = int(c.row_totals[x]) + int(c.row_totals[y])
        if denominator == 0:
            continue
        total += w_i * (int(c.A[x, y]) + int(c.A[y, x])) / denominator
    return total


def build_similarity(counts: Sequence[CountMatrix], weights: Sequence[float]) -> SimMatrix:
    """Entrywise hint_similarity over every pair with at least one path instance."""
    n = _check_counts(counts)
    w = validate_weights(weights, len(counts))

    S = sp.csr_matrix((n, n), dtype=float)
    for c, w_i in zip(counts, w):
        if w_i == 0.0:
            continue
        M = (c.A + c.A.T).tocoo()
        denominator = c.row_totals[M.row] + c.row_totals[M.col]
        values = M.data / denominator
        S = S + w_i * sp.csr_matrix((values, (M.row, M.col)), shape=(n, n))

    S = sp.csr_matrix(S)
    S.eliminate_zeros()
    np.minimum(S.data, 1.0, out=S.data)
    S.sort_indices()
    logger.info(f"Built similarity matrix: n={n}, {S.nnz} non-zero entries")
    return SimMatrix(S=S, weights=w, meta_path_ids=tuple(c.meta_path.id for c in counts))
