"""Clustering quality and cross-collection agreement metrics."""

from __future__ import annotations

import logging
from typing import Dict, Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict
from sklearn.metrics import normalized_mutual_info_score
from sklearn.metrics.cluster import contingency_matrix

from mutual_hint.errors import ValidationError
from mutual_hint.modules.corpus.anchors import AnchorSet
from mutual_hint.modules.simmat.transition import TransitionMatrix, transition_anchors
from mutual_hint.modules.spectral.confidence import ConfidenceMatrix, harden

logger = logging.getLogger(__name__)


class MetricReport(BaseModel):
    model_config = ConfigDict(extra="forbid")

    nmi1: Optional[float] = None
    nmi2: Optional[float] = None
    f1_1: Optional[float] = None
    f1_2: Optional[float] = None
    cond_entropy: Optional[float] = None
    cond_entropy_aligned: Optional[float] = None
    anchor_agreement: Optional[float] = None
    d: Optional[float] = None
    Nd: Optional[float] = None
    d_pairwise: Optional[float] = None
    f1_variant: str = "pairwise"


def _check_pair(labels: Sequence[int], truth: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    labels = np.asarray(labels)
    truth = np.asarray(truth)
    if labels.shape != truth.shape:
        raise ValidationError(f"label vectors differ in length: {labels.size} vs {truth.size}")
    if labels.size == 0:
        raise ValidationError("label vectors are empty")
    return labels, truth


def nmi(
    labels: Sequence[int],
    truth: Sequence[int],
    average: Literal["geometric", "arithmetic"] = "geometric",
) -> float:
    labels, truth = _check_pair(labels, truth)
    return float(normalized_mutual_info_score(truth, labels, average_method=average))


def _pairs(counts: np.ndarray) -> int:
    counts = np.asarray(counts, dtype=np.int64)
    return int(np.sum(counts * (counts - 1) // 2))


def pairwise_f1(labels: Sequence[int], truth: Sequence[int]) -> float:
    """F1 over same-cluster document pairs."""
    labels, truth = _check_pair(labels, truth)
    table = contingency_matrix(truth, labels, sparse=False)
    together = _pairs(table.ravel())
    predicted = _pairs(table.sum(axis=0))
    actual = _pairs(table.sum(axis=1))
    if predicted == 0 and actual == 0:
        return 1.0
    precision = together / predicted if predicted else 0.0
    recall = together / actual if actual else 0.0
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


# -------------------------
# Anchored agreement
# -------------------------


def anchored_labels(
    labels1: Sequence[int], labels2: Sequence[int], anchors: AnchorSet
) -> tuple[np.ndarray, np.ndarray]:
    """(tweet cluster, partner news cluster) for every anchor pair."""
    labels1 = np.asarray(labels1)
    labels2 = np.asarray(labels2)
    if anchors.size == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    idx1 = np.fromiter((i for i, _ in anchors), dtype=np.int64, count=anchors.size)
    idx2 = np.fromiter((j for _, j in anchors), dtype=np.int64, count=anchors.size)
    if idx1.max() >= labels1.size or idx2.max() >= labels2.size:
        raise ValidationError("anchors reference documents without labels")
    return labels1[idx1], labels2[idx2]


def majority_mapping(
    labels1: Sequence[int], labels2: Sequence[int], anchors: AnchorSet
) -> Dict[int, tuple[int, float]]:
    """Tweet cluster -> (most frequent partner news cluster, its share of anchored members).

    Ties go to the lowest news cluster id.
    """
    x, y = anchored_labels(labels1, labels2, anchors)
    mapping: Dict[int, tuple[int, float]] = {}
    for c1 in np.unique(x):
        partners = y[x == c1]
        values, counts = np.unique(partners, return_counts=True)
        best = int(np.argmax(counts))
        mapping[int(c1)] = (int(values[best]), counts[best] / partners.size)
    return mapping


def anchor_agreement(
    labels1: Sequence[int],
    labels2: Sequence[int],
    anchors: AnchorSet,
    reference: Optional[AnchorSet] = None,
) -> float:
    """Share of ``anchors`` whose news cluster is the one their tweet cluster maps to.

    The cluster mapping is learned on ``reference`` (default: ``anchors`` itself).
    """
    if anchors.size == 0:
        raise ValidationError("anchor agreement is undefined without anchors")
    mapping = majority_mapping(labels1, labels2, reference if reference is not None else anchors)
    x, y = anchored_labels(labels1, labels2, anchors)
    hits = sum(1 for c1, c2 in zip(x, y) if c1 in mapping and mapping[c1][0] == c2)
    return hits / anchors.size


def entropy_of_joint(x: np.ndarray, y: np.ndarray) -> float:
    """H(Y|X) = sum p(x,y) log(p(x) / p(x,y)), natural log."""
    table = contingency_matrix(x, y, sparse=False).astype(float)
    joint = table / table.sum()
    marginal = joint.sum(axis=1, keepdims=True)
    mask = joint > 0
    ratio = np.broadcast_to(marginal, joint.shape)[mask] / joint[mask]
    return max(float(np.sum(joint[mask] * np.log(ratio))), 0.0)


def conditional_entropy_from_labels(
    labels1: Sequence[int],
    labels2: Sequence[int],
    anchors: AnchorSet,
    aligned: bool = False,
) -> float:
    x, y = anchored_labels(labels1, labels2, anchors)
    if x.size == 0:
        raise ValidationError("conditional entropy is undefined without anchored documents")
    if aligned:
        # Map each transferred cluster to the tweet cluster it overlaps most.
        table = contingency_matrix(x, y, sparse=False)
        xs = np.unique(x)
        ys = np.unique(y)
        to_x = {int(yv): int(xs[np.argmax(table[:, col])]) for col, yv in enumerate(ys)}
        y = np.array([to_x[int(v)] for v in y])
    return entropy_of_joint(x, y)


def conditional_entropy(
    H1: ConfidenceMatrix | np.ndarray,
    H2: ConfidenceMatrix | np.ndarray,
    transition: TransitionMatrix,
    aligned: bool = False,
) -> float:
    """Entropy of the transferred news clustering given the tweet clustering.

    News labels reach tweet space through the anchor transition matrix; only
    anchored tweets enter the joint distribution.
    """
    return conditional_entropy_from_labels(
        harden(H1), harden(H2), transition_anchors(transition), aligned=aligned
    )


def evaluate(
    labels1: Sequence[int],
    labels2: Sequence[int],
    truth1: Optional[Sequence[int]] = None,
    truth2: Optional[Sequence[int]] = None,
    anchors: Optional[AnchorSet] = None,
    average: Literal["geometric", "arithmetic"] = "geometric",
    **inconsistency: Optional[float],
) -> MetricReport:
    """Fill every metric the given inputs allow; the rest stay None."""
    report = MetricReport(**inconsistency)
    if truth1 is not None:
        report.nmi1 = nmi(labels1, truth1, average)
        report.f1_1 = pairwise_f1(labels1, truth1)
    if truth2 is not None:
        report.nmi2 = nmi(labels2, truth2, average)
        report.f1_2 = pairwise_f1(labels2, truth2)
    if anchors is not None and anchors.size:
        report.cond_entropy = conditional_entropy_from_labels(labels1, labels2, anchors)
        report.cond_entropy_aligned = conditional_entropy_from_labels(
            labels1, labels2, anchors, aligned=True
        )
        report.anchor_agreement = anchor_agreement(labels1, labels2, anchors)
    elif anchors is not None:
        logger.warning("No anchors: conditional entropy and anchor agreement left empty")
    return report
