"""Mutual clustering inconsistency between anchored documents."""

from __future__ import annotations

from typing import Tuple

import numpy as np
import scipy.sparse as sp

from mutual_hint.errors import ValidationError
from mutual_hint.modules.simmat.transition import TransitionMatrix
from mutual_hint.modules.spectral.confidence import ConfidenceMatrix


def _matrix(H: ConfidenceMatrix | np.ndarray) -> np.ndarray:
    return H.H if isinstance(H, ConfidenceMatrix) else np.asarray(H, dtype=float)


def _check(H1: np.ndarray, H2: np.ndarray, transition: TransitionMatrix) -> int:
    n1, n2 = transition.shape
    if H1.shape[0] != n1 or H2.shape[0] != n2:
        raise ValidationError(
            f"confidence matrices ({H1.shape[0]}, {H2.shape[0]} rows) do not match "
            f"transition {transition.shape}"
        )
    R = transition.anchor_count
    if R < 2:
        raise ValidationError(f"normalized inconsistency is undefined with {R} anchor(s)")
    return R


def transferred(H1, H2, transition: TransitionMatrix) -> Tuple[np.ndarray, np.ndarray]:
    """Both clusterings moved into news space: T12' H1 and T12' T12 H2."""
    H1, H2 = _matrix(H1), _matrix(H2)
    H1_bar = np.asarray(transition.T21 @ H1)
    H2_bar = transition.anchors_per_news()[:, None] * H2
    return H1_bar, H2_bar


def inconsistency(
    H1: ConfidenceMatrix | np.ndarray,
    H2: ConfidenceMatrix | np.ndarray,
    transition: TransitionMatrix,
) -> Tuple[float, float]:
    """(d, Nd) with d = 1/2 ||H1b H1b' - H2b H2b'||_F^2 and Nd = d / (|R|(|R|-1)).

    Each unordered pair of anchored news documents is counted once.
    """
    R = _check(_matrix(H1), _matrix(H2), transition)
    H1_bar, H2_bar = transferred(H1, H2, transition)
    difference = H1_bar @ H1_bar.T - H2_bar @ H2_bar.T
    d = 0.5 * float(np.sum(difference * difference))
    return d, d / (R * (R - 1))


def pairwise_inconsistency(
    H1: ConfidenceMatrix | np.ndarray,
    H2: ConfidenceMatrix | np.ndarray,
    transition: TransitionMatrix,
) -> float:
    """Sum over ordered news pairs (i, j) and their anchored tweets p, q of (h_i h_j' - h_p h_q')^2."""
    H1, H2 = _matrix(H1), _matrix(H2)
    _check(H1, H2, transition)

    anchored_tweets = np.flatnonzero(np.asarray(transition.T12.sum(axis=1)).ravel())
    counts = transition.anchors_per_news()
    anchored_news = np.flatnonzero(counts)
    # tweet -> news incidence restricted to anchored documents
    M = sp.csr_matrix(transition.T12[anchored_tweets][:, anchored_news]).toarray()
    m = counts[anchored_news]

    K1 = H1[anchored_tweets] @ H1[anchored_tweets].T
    H2a = H2[anchored_news]
    K2 = H2a @ H2a.T

    tweet_sum = M.T @ K1 @ M
    tweet_square_sum = M.T @ (K1 * K1) @ M
    total = np.outer(m, m) * K2 * K2 - 2.0 * K2 * tweet_sum + tweet_square_sum
    return float(np.sum(total))
