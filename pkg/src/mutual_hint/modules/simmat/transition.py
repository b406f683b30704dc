"""Anchor transition matrices T^(1,2) and T^(2,1)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from mutual_hint.errors import ValidationError
from mutual_hint.modules.corpus.anchors import AnchorSet


@dataclass(frozen=True)
class TransitionMatrix:
    T12: sp.csr_matrix
    anchor_count: int

    @property
    def T21(self) -> sp.csr_matrix:
        return self.T12.T.tocsr()

    @property
    def shape(self) -> tuple[int, int]:
        return self.T12.shape

    def anchors_per_news(self) -> np.ndarray:
        """Number of tweets anchored to each news document (diagonal of T12' T12)."""
        return np.asarray(self.T12.sum(axis=0)).ravel()


def build_transition(anchors: AnchorSet, n1: int, n2: int) -> TransitionMatrix:
    rows = []
    cols = []
    for idx1, idx2 in anchors:
        if not (0 <= idx1 < n1 and 0 <= idx2 < n2):
            raise ValidationError(f"anchor ({idx1}, {idx2}) out of bounds for {n1}x{n2}")
        rows.append(idx1)
        cols.append(idx2)
    T12 = sp.csr_matrix(
        (np.ones(len(rows), dtype=float), (rows, cols)), shape=(n1, n2)
    )
    return TransitionMatrix(T12=T12, anchor_count=anchors.size)


def transition_anchors(transition: TransitionMatrix) -> AnchorSet:
    """Recover the anchor pairs encoded by T12."""
    coo = transition.T12.tocoo()
    return AnchorSet(tuple(zip(coo.row.tolist(), coo.col.tolist())))
