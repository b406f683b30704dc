"""Confidence matrices H = D^-1/2 X and their hard labels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mutual_hint.errors import ValidationError
from mutual_hint.modules.spectral.embedding import Embedding
from mutual_hint.modules.spectral.laplacian import LaplacianBundle


@dataclass(frozen=True)
class ConfidenceMatrix:
    H: np.ndarray

    def __post_init__(self) -> None:
        H = np.asarray(self.H, dtype=float)
        if H.ndim != 2:
            raise ValidationError(f"confidence matrix must be 2-D, got shape {H.shape}")
        if not np.all(np.isfinite(H)):
            raise ValidationError("confidence matrix has non-finite entries")
        object.__setattr__(self, "H", H)

    @property
    def k(self) -> int:
        return self.H.shape[1]

    @property
    def n(self) -> int:
        return self.H.shape[0]

    @classmethod
    def from_labels(cls, labels, k: int | None = None) -> "ConfidenceMatrix":
        """Binary indicator matrix of a hard clustering."""
        labels = np.asarray(labels, dtype=np.int64)
        k = int(labels.max()) + 1 if k is None else k
        H = np.zeros((labels.size, k))
        H[np.arange(labels.size), labels] = 1.0
        return cls(H)


def confidence_matrix(embedding: Embedding, laplacian: LaplacianBundle) -> ConfidenceMatrix:
    """Undo the substitution X = D^1/2 H."""
    return ConfidenceMatrix(np.asarray(laplacian.D_inv_sqrt @ embedding.X))


def harden(H: ConfidenceMatrix | np.ndarray) -> np.ndarray:
    """Row-wise argmax of |H|; ties go to the lowest cluster id."""
    H = H.H if isinstance(H, ConfidenceMatrix) else np.asarray(H, dtype=float)
    return np.argmax(np.abs(H), axis=1).astype(np.int64)
