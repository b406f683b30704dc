"""End-to-end mutual clustering pipeline composing every stage."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from mutual_hint.config import SearchParams
from mutual_hint.errors import ConfigError, ValidationError
from mutual_hint.modules.corpus.anchors import AnchorSet, extract_anchors
from mutual_hint.modules.corpus.documents import CorpusPair, Document
from mutual_hint.modules.eval.metrics import anchor_agreement
from mutual_hint.modules.hin.count_matrix import CountMatrix, build_count_matrices
from mutual_hint.modules.mutual.inconsistency import inconsistency, pairwise_inconsistency
from mutual_hint.modules.mutual.linking import (
    DEFAULT_LINK_THRESHOLD,
    ClusterLink,
    link_clusters,
)
from mutual_hint.modules.simmat.similarity import SimMatrix, build_similarity
from mutual_hint.modules.simmat.transition import TransitionMatrix, build_transition
from mutual_hint.modules.spectral.confidence import (
    ConfidenceMatrix,
    confidence_matrix,
    harden,
)
from mutual_hint.modules.spectral.embedding import Embedding, init_embedding
from mutual_hint.modules.spectral.laplacian import LaplacianBundle, build_laplacian
from mutual_hint.modules.stiefel_opt.objective import Subproblem, build_context, objective_terms
from mutual_hint.modules.stiefel_opt.solver import (
    StepRecord,
    alternating_solve,
    curvilinear_solve,
)
from mutual_hint.network.engine import network_schema
from mutual_hint.network.schema import Source

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PreparedSide:
    side: Source
    counts: List[CountMatrix]
    similarity: SimMatrix
    laplacian: LaplacianBundle

    @property
    def n(self) -> int:
        return self.similarity.n


@dataclass(frozen=True)
class PreparedCorpus:
    """Everything upstream of the optimizer; reusable across theta values and seeds."""

    corpus: CorpusPair
    anchors: AnchorSet
    transition: TransitionMatrix
    tweets: PreparedSide
    news: PreparedSide

    def side(self, side: Source) -> PreparedSide:
        return self.tweets if side is Source.TYPE1 else self.news

    def with_anchors(self, anchors: AnchorSet) -> "PreparedCorpus":
        """Same similarity data, different anchor set (hold-out and rate sweeps)."""
        transition = build_transition(anchors, self.corpus.n1, self.corpus.n2)
        return PreparedCorpus(self.corpus, anchors, transition, self.tweets, self.news)


@dataclass
class MutualClustering:
    labels1: np.ndarray
    labels2: np.ndarray
    H1: ConfidenceMatrix
    H2: ConfidenceMatrix
    links: List[ClusterLink]
    metrics: Dict[str, Any]
    trace: List[float] = field(default_factory=list)
    steps: List[StepRecord] = field(default_factory=list)
    anchors: AnchorSet = field(default_factory=AnchorSet)


def prepare_side(
    documents: Sequence[Document],
    side: Source,
    weights: Optional[Sequence[float]] = None,
    split_retweet: bool = False,
    threads: Optional[int] = None,
) -> PreparedSide:
    meta_paths = network_schema.meta_paths(side, split_retweet=split_retweet)
    if weights is None:
        weights = network_schema.default_weights(side, split_retweet=split_retweet)
    counts = build_count_matrices(documents, meta_paths, threads=threads)
    similarity = build_similarity(counts, weights)
    return PreparedSide(side, counts, similarity, build_laplacian(similarity))


def prepare(
    corpus: CorpusPair,
    weights1: Optional[Sequence[float]] = None,
    weights2: Optional[Sequence[float]] = None,
    min_common: int = 1,
    split_retweet: bool = False,
    threads: Optional[int] = None,
    anchors: Optional[AnchorSet] = None,
) -> PreparedCorpus:
    corpus.require_non_empty()
    if anchors is None:
        anchors = extract_anchors(corpus, min_common=min_common)
    transition = build_transition(anchors, corpus.n1, corpus.n2)
    tweets = prepare_side(corpus.collection1, Source.TYPE1, weights1, split_retweet, threads)
    news = prepare_side(corpus.collection2, Source.TYPE2, weights2, split_retweet, threads)
    return PreparedCorpus(corpus, anchors, transition, tweets, news)


def _check_k(k: int, n: int, side: Source) -> None:
    if not 1 <= k <= n:
        raise ValidationError(f"k={k} must lie in [1, {n}] for the {side.value} collection")


def run_single(
    prepared: PreparedSide,
    k: int,
    seed: int = 0,
    params: Optional[SearchParams] = None,
    weight: float = 1.0,
) -> Tuple[np.ndarray, ConfidenceMatrix, Embedding]:
    """Plain spectral clustering of one collection (no inconsistency penalty).

    The solve restarts until it converges or ``max_outer`` restarts are used,
    matching what the alternating solver does to each side when theta = 0.
    """
    params = params or SearchParams()
    _check_k(k, prepared.n, prepared.side)
    X = init_embedding(prepared.similarity, k, seed).X
    fn = Subproblem(L_tilde=prepared.laplacian.L_tilde, weight=weight)
    half = 0 if prepared.side is Source.TYPE1 else 1
    for round_index in range(params.max_outer):
        result = curvilinear_solve(X, fn, params, round_index, half)
        X = result.X
        if result.converged:
            break
    embedding = Embedding(X)
    H = confidence_matrix(embedding, prepared.laplacian)
    return harden(H), H, embedding


def run_hint(
    corpus: CorpusPair | PreparedCorpus,
    k1: int,
    k2: int,
    theta: float = 1.0,
    weights1: Optional[Sequence[float]] = None,
    weights2: Optional[Sequence[float]] = None,
    seed: int = 0,
    params: Optional[SearchParams] = None,
    alpha: float = 1.0,
    beta: float = 1.0,
    min_common: int = 1,
    link_threshold: float = DEFAULT_LINK_THRESHOLD,
    split_retweet: bool = False,
    threads: Optional[int] = None,
) -> MutualClustering:
    """Mutually cluster both collections.

    anchors -> count matrices -> similarities -> transition -> Laplacians ->
    k-means initialization -> alternating curvilinear search -> H = D^-1/2 X
    -> hard labels -> cluster links.
    """
    params = params or SearchParams()
    if isinstance(corpus, PreparedCorpus):
        prepared = corpus
    else:
        prepared = prepare(corpus, weights1, weights2, min_common, split_retweet, threads)
    tweets, news = prepared.tweets, prepared.news
    _check_k(k1, tweets.n, Source.TYPE1)
    _check_k(k2, news.n, Source.TYPE2)
    R = prepared.anchors.size
    if theta > 0 and R < 2:
        raise ConfigError(f"penalty undefined with {R} anchor(s), set theta=0")

    ctx = build_context(
        tweets.laplacian.L_tilde,
        news.laplacian.L_tilde,
        tweets.laplacian.D_inv_sqrt,
        news.laplacian.D_inv_sqrt,
        prepared.transition,
        theta=theta,
        alpha=alpha,
        beta=beta,
    )
    X1_0 = init_embedding(tweets.similarity, k1, seed)
    X2_0 = init_embedding(news.similarity, k2, seed)
    logger.info(
        f"Solving n1={tweets.n}, n2={news.n}, k1={k1}, k2={k2}, |R|={R}, theta={theta}"
    )
    X1, X2, trace, steps = alternating_solve(X1_0, X2_0, ctx, params)

    H1 = confidence_matrix(X1, tweets.laplacian)
    H2 = confidence_matrix(X2, news.laplacian)
    labels1, labels2 = harden(H1), harden(H2)
    links = link_clusters(labels1, labels2, prepared.anchors, link_threshold)

    trace_term, penalty_term = objective_terms(X1, X2, ctx)
    metrics: Dict[str, Any] = {
        "anchor_count": R,
        "objective_initial": trace[0],
        "objective_final": trace[-1],
        "rounds": (len(trace) - 1) // 2,
        "steps": len(steps),
    }
    metrics.update(
        trace_term=trace_term,
        penalty_term=penalty_term,
        penalty_trace_ratio=penalty_term / trace_term if trace_term > 0 else 0.0,
    )
    if R >= 2:
        d, Nd = inconsistency(H1, H2, prepared.transition)
        d_pairwise = pairwise_inconsistency(H1, H2, prepared.transition)
        metrics.update(d=d, Nd=Nd, d_pairwise=d_pairwise, d_discrepancy=d_pairwise - d)
    if R >= 1:
        metrics["anchor_agreement"] = anchor_agreement(labels1, labels2, prepared.anchors)

    return MutualClustering(
        labels1=labels1,
        labels2=labels2,
        H1=H1,
        H2=H2,
        links=links,
        metrics=metrics,
        trace=trace,
        steps=steps,
        anchors=prepared.anchors,
    )
