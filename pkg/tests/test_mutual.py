"""Inconsistency, cluster links, the end-to-end pipeline and theta tuning."""

import numpy as np
import pytest

from mutual_hint.config import SearchParams, SynthConfig
from mutual_hint.errors import ConfigError, ValidationError
from mutual_hint.modules.corpus.anchors import AnchorSet
from mutual_hint.modules.mutual import (
    ClusterLink,
    inconsistency,
    link_clusters,
    pairwise_inconsistency,
    prepare,
    run_hint,
    run_single,
    tune_theta,
)
from mutual_hint.modules.mutual.experiments import (
    anchor_rate_sweep,
    parse_range,
    parse_sweep,
    summarize,
    theta_sweep,
)
from mutual_hint.modules.mutual.tuning import split_anchors
from mutual_hint.modules.simmat import build_transition
from mutual_hint.modules.spectral import ConfidenceMatrix
from mutual_hint.modules.stiefel_opt import alternating_solve, build_context, objective
from mutual_hint.modules.synth.generator import generate


# -------------------------
# Inconsistency
# -------------------------


def test_four_tweet_example(anchoring_example):
    H1, H2, transition = anchoring_example
    d, Nd = inconsistency(H1, H2, transition)
    assert d == 16
    assert Nd == pytest.approx(16 / 12, abs=1e-9)
    assert pairwise_inconsistency(H1, H2, transition) == pytest.approx(8)


def test_consistent_clusterings_have_zero_inconsistency(anchoring_example):
    H1, _, transition = anchoring_example
    # news 0 and 2 carry the clusters of their anchored tweets
    H2 = ConfidenceMatrix.from_labels([0, 0, 1, 1], 2)
    d, Nd = inconsistency(H1, H2, transition)
    assert d == 0
    assert Nd == 0


def test_inconsistency_is_rotation_invariant(rng):
    transition = build_transition(AnchorSet(((0, 1), (1, 1), (2, 0), (4, 3))), 6, 5)
    H1, H2 = rng.standard_normal((6, 3)), rng.standard_normal((5, 3))
    Q = np.linalg.qr(rng.standard_normal((3, 3)))[0]
    before, _ = inconsistency(H1, H2, transition)
    after, _ = inconsistency(H1 @ Q, H2 @ Q, transition)
    assert after == pytest.approx(before, rel=1e-10)


def test_inconsistency_needs_two_anchors():
    transition = build_transition(AnchorSet(((0, 0),)), 2, 2)
    with pytest.raises(ValidationError):
        inconsistency(np.eye(2), np.eye(2), transition)
    with pytest.raises(ValidationError):
        inconsistency(np.eye(3), np.eye(2), build_transition(AnchorSet(((0, 0), (1, 1))), 2, 2))


# -------------------------
# Cluster links
# -------------------------


def test_link_when_most_anchored_members_agree():
    anchors = AnchorSet(tuple((i, i) for i in range(10)))
    labels1 = np.zeros(10, dtype=int)
    labels2 = np.array([3] * 9 + [1])
    links = link_clusters(labels1, labels2, anchors)
    assert links == [ClusterLink(0, 3, pytest.approx(0.9))]


def test_even_split_gives_no_link():
    anchors = AnchorSet(tuple((i, i) for i in range(4)))
    assert link_clusters([0, 0, 0, 0], [1, 1, 2, 2], anchors) == []


def test_unanchored_cluster_gives_no_link():
    anchors = AnchorSet(((0, 0), (1, 1)))
    links = link_clusters([0, 0, 1, 1], [2, 2], anchors)
    assert [link.cluster1 for link in links] == [0]


def test_link_threshold_bounds():
    with pytest.raises(ValidationError):
        link_clusters([0], [0], AnchorSet(((0, 0),)), link_threshold=0.0)


# -------------------------
# Pipeline
# -------------------------


@pytest.fixture(scope="module")
def prepared(small_synthetic):
    return prepare(small_synthetic.corpus)


def test_zero_theta_matches_independent_spectral_runs(prepared):
    result = run_hint(prepared, 3, 3, theta=0.0, seed=4)
    labels1, _, _ = run_single(prepared.tweets, 3, seed=4)
    labels2, _, _ = run_single(prepared.news, 3, seed=4)
    np.testing.assert_array_equal(result.labels1, labels1)
    np.testing.assert_array_equal(result.labels2, labels2)


def test_run_hint_reports_metrics(prepared):
    result = run_hint(prepared, 3, 3, theta=1.0, seed=0)
    assert result.labels1.shape == (60,)
    assert result.H2.n == 60
    assert result.metrics["anchor_count"] == prepared.anchors.size
    assert result.metrics["objective_final"] <= result.metrics["objective_initial"] + 1e-9
    assert result.metrics["Nd"] == pytest.approx(
        result.metrics["d"] / (prepared.anchors.size * (prepared.anchors.size - 1))
    )
    assert 0 <= result.metrics["anchor_agreement"] <= 1
    assert all(link.anchored_fraction >= 0.8 for link in result.links)


@pytest.mark.parametrize("theta", [0.0, 1.0])
def test_objective_split_into_trace_and_penalty(prepared, theta):
    metrics = run_hint(prepared, 3, 3, theta=theta, seed=1).metrics
    assert metrics["trace_term"] + metrics["penalty_term"] == pytest.approx(
        metrics["objective_final"], rel=1e-12
    )
    assert metrics["trace_term"] > 0
    assert metrics["penalty_trace_ratio"] == pytest.approx(
        metrics["penalty_term"] / metrics["trace_term"]
    )
    if theta == 0.0:
        assert metrics["penalty_term"] == 0.0
    else:
        assert metrics["penalty_term"] >= 0.0


def test_run_hint_is_deterministic(prepared):
    first = run_hint(prepared, 3, 3, theta=1.0, seed=2)
    second = run_hint(prepared, 3, 3, theta=1.0, seed=2)
    assert first.trace == second.trace
    np.testing.assert_array_equal(first.labels1, second.labels1)


def test_penalized_search_improves_on_decoupled_solution(prepared):
    decoupled = run_hint(prepared, 3, 3, theta=0.0, seed=0)
    ctx = build_context(
        prepared.tweets.laplacian.L_tilde,
        prepared.news.laplacian.L_tilde,
        prepared.tweets.laplacian.D_inv_sqrt,
        prepared.news.laplacian.D_inv_sqrt,
        prepared.transition,
        theta=1.0,
    )
    # X = D^1/2 H
    X1 = np.sqrt(prepared.tweets.laplacian.degrees)[:, None] * decoupled.H1.H
    X2 = np.sqrt(prepared.news.laplacian.degrees)[:, None] * decoupled.H2.H
    _, _, trace, _ = alternating_solve(X1, X2, ctx, SearchParams(max_outer=10))
    assert trace[0] == pytest.approx(objective(X1, X2, ctx))
    assert trace[-1] <= trace[0] + 1e-9 * abs(trace[0])



def test_one_cluster_per_document(small_synthetic):
    prepared = prepare(small_synthetic.corpus)
    result = run_hint(prepared, 60, 3, theta=0.0, params=SearchParams(max_outer=2))
    assert sorted(result.labels1.tolist()) == list(range(60))


def test_penalty_without_anchors_is_rejected():
    data = generate(SynthConfig(k=2, n1=20, n2=20, anchor_rate=0.0, seed=1))
    with pytest.raises(ConfigError, match="theta=0"):
        run_hint(data.corpus, 2, 2, theta=1.0)
    result = run_hint(data.corpus, 2, 2, theta=0.0)
    assert "d" not in result.metrics
    assert "anchor_agreement" not in result.metrics


def test_k_out_of_range(prepared):
    with pytest.raises(ValidationError):
        run_hint(prepared, 61, 3)


# -------------------------
# Theta tuning
# -------------------------


def test_split_anchors_holds_out_a_share():
    anchors = AnchorSet(tuple((i, i) for i in range(10)))
    kept, held = split_anchors(anchors, 0.2, seed=0)
    assert held.size == 2
    assert kept.size == 8
    assert set(kept.pairs) | set(held.pairs) == set(anchors.pairs)
    with pytest.raises(ConfigError):
        split_anchors(anchors, 1.0, seed=0)


def test_tune_theta_picks_a_grid_value(prepared):
    tuning = tune_theta(prepared, 3, 3, thetas=[0.0, 1.0], seed=0)
    assert tuning.best_theta in (0.0, 1.0)
    assert set(tuning.scores) == {0.0, 1.0}
    assert all(0 <= s <= 1 for s in tuning.scores.values())
    assert tuning.held_out.size >= 1


# -------------------------
# Sweeps
# -------------------------


def test_parse_range():
    assert parse_range("0:0.25:1") == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert parse_range("0.5,1,1.5") == [0.5, 1.0, 1.5]
    assert parse_sweep("anchor-rate=0.1:0.1:0.3") == ("anchor_rate", [0.1, 0.2, 0.3])
    with pytest.raises(ConfigError):
        parse_sweep("k=1:1:3")
    with pytest.raises(ConfigError):
        parse_range("1:0:2")


def test_theta_sweep_rows():
    synth = SynthConfig(k=2, n1=30, n2=30, words_per_doc2=30, seed=0)
    rows = theta_sweep(synth, [0.0, 1.0], seeds=[0, 1], params=SearchParams(max_outer=5))
    assert len(rows) == 4
    assert {"nmi1", "nmi2", "baseline_nmi1"} <= set(rows.columns)
    summary = summarize(rows)
    assert list(summary["value"]) == [0.0, 1.0]
    assert "nmi1_mean" in summary.columns


@pytest.mark.slow
def test_penalty_improves_tweet_clustering():
    synth = SynthConfig(k=4, n1=200, n2=200, p_in=0.3, p_out=0.02, anchor_rate=0.5)
    rows = theta_sweep(synth, [0.0, 1.0], seeds=range(20))
    means = rows.groupby("value")[["nmi1", "nmi2"]].mean()
    assert means.loc[1.0, "nmi1"] > means.loc[0.0, "nmi1"]
    assert means.loc[1.0, "nmi2"] >= means.loc[0.0, "nmi2"] - 0.02


@pytest.mark.slow
def test_more_anchors_help():
    synth = SynthConfig(k=4, n1=200, n2=200, p_in=0.3, p_out=0.02)
    rows = anchor_rate_sweep(synth, [0.1, 0.8], seeds=range(20))
    means = rows.groupby("value")["nmi1"].mean()
    assert means.loc[0.8] >= means.loc[0.1]
