"""K-means initialization of the orthonormal spectral embedding."""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.sparse as sp
from sklearn.cluster import KMeans
from sklearn.exceptions import ConvergenceWarning

from mutual_hint.errors import ValidationError
from mutual_hint.modules.simmat.similarity import SimMatrix

logger = logging.getLogger(__name__)

KMEANS_MAX_ITER = 300


@dataclass(frozen=True)
class Embedding:
    X: np.ndarray

    @property
    def k(self) -> int:
        return self.X.shape[1]

    @property
    def n(self) -> int:
        return self.X.shape[0]

    def orthogonality_error(self) -> float:
        return float(np.linalg.norm(self.X.T @ self.X - np.eye(self.k)))


def kmeans(rows: np.ndarray | sp.spmatrix, k: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """Lloyd iterations from k-means++ seeding; returns (labels, centers)."""
    rows = rows.toarray() if sp.issparse(rows) else np.asarray(rows, dtype=float)
    if rows.ndim == 1:
        rows = rows.reshape(-1, 1)
    n = rows.shape[0]
    if k < 1 or k > n:
        raise ValidationError(f"cluster count k={k} must lie in [1, {n}]")

    model = KMeans(
        n_clusters=k,
        init="k-means++",
        n_init=1,
        max_iter=KMEANS_MAX_ITER,
        tol=0.0,
        algorithm="lloyd",
        random_state=seed,
    )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ConvergenceWarning)
        labels = model.fit_predict(rows)
    for w in caught:
        logger.debug(f"kmeans: {w.message}")
    return labels.astype(np.int64), model.cluster_centers_


def fill_empty_clusters(rows: np.ndarray, labels: np.ndarray, centers: np.ndarray, k: int) -> np.ndarray:
    """Move the point farthest from its centroid into each empty cluster."""
    labels = labels.copy()
    for c in range(k):
        if np.any(labels == c):
            continue
        sizes = np.bincount(labels, minlength=k)
        distances = np.linalg.norm(rows - centers[labels], axis=1)
        distances[sizes[labels] <= 1] = -np.inf
        donor = int(np.argmax(distances))
        logger.warning(f"kmeans left cluster {c} empty; re-seeded with point {donor}")
        labels[donor] = c
    return labels


def orthonormalize(Z: np.ndarray) -> np.ndarray:
    """Column-normalize then QR, with signs fixed so that diag(R) >= 0."""
    norms = np.linalg.norm(Z, axis=0)
    norms[norms == 0] = 1.0
    Q, R = np.linalg.qr(Z / norms)
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    return Q * signs


def indicator_embedding(labels: np.ndarray, k: int) -> Embedding:
    labels = np.asarray(labels, dtype=np.int64)
    Z = np.zeros((labels.size, k))
    Z[np.arange(labels.size), labels] = 1.0
    return Embedding(orthonormalize(Z))


def init_embedding(sim: SimMatrix | np.ndarray, k: int, seed: int) -> Embedding:
    rows = sim.dense() if isinstance(sim, SimMatrix) else np.asarray(sim, dtype=float)
    labels, centers = kmeans(rows, k, seed)
    labels = fill_empty_clusters(rows, labels, centers, k)
    embedding = indicator_embedding(labels, k)
    logger.debug(
        f"Initial embedding n={embedding.n}, k={k}, "
        f"cluster sizes={np.bincount(labels, minlength=k).tolist()}"
    )
    return embedding
