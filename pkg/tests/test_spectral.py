"""Laplacians, k-means initialization and confidence matrices."""

import logging

import numpy as np
import pytest
import scipy.sparse as sp

from mutual_hint.errors import ValidationError
from mutual_hint.modules.spectral import (
    ConfidenceMatrix,
    build_laplacian,
    confidence_matrix,
    harden,
    indicator_embedding,
    init_embedding,
    kmeans,
)
from mutual_hint.modules.spectral.embedding import fill_empty_clusters, orthonormalize


def test_two_node_laplacian():
    bundle = build_laplacian(np.array([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_allclose(bundle.D.toarray(), np.eye(2))
    np.testing.assert_allclose(bundle.L.toarray(), [[1, -1], [-1, 1]])
    np.testing.assert_allclose(bundle.L_tilde.toarray(), [[1, -1], [-1, 1]])


def test_normalized_laplacian_is_psd_with_unit_diagonal(rng):
    B = rng.random((6, 6))
    S = (B + B.T) / 2
    np.fill_diagonal(S, 0)
    bundle = build_laplacian(sp.csr_matrix(S))
    L_tilde = bundle.L_tilde.toarray()
    np.testing.assert_allclose(np.diag(L_tilde), np.ones(6))
    np.testing.assert_array_equal(L_tilde, L_tilde.T)
    assert np.linalg.eigvalsh(L_tilde).min() > -1e-10
    # D^1/2 1 spans the null space
    v = np.sqrt(bundle.degrees)
    np.testing.assert_allclose(L_tilde @ v, 0, atol=1e-12)


def test_isolated_row_is_regularized(caplog):
    S = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    with caplog.at_level(logging.WARNING):
        bundle = build_laplacian(S)
    assert bundle.degrees[2] == pytest.approx(1e-8)
    assert np.all(np.isfinite(bundle.L_tilde.toarray()))
    assert "isolated" in caplog.text


def test_asymmetric_or_negative_similarity_rejected():
    with pytest.raises(ValidationError):
        build_laplacian(np.array([[0.0, 1.0], [0.5, 0.0]]))
    with pytest.raises(ValidationError):
        build_laplacian(np.array([[0.0, -1.0], [-1.0, 0.0]]))
    with pytest.raises(ValidationError):
        build_laplacian(np.zeros((2, 3)))


def test_kmeans_recovers_separated_groups():
    points = np.array([0.0, 0.1, 0.2, 10.0, 10.1, 10.2])
    labels, _ = kmeans(points, 2, seed=3)
    assert len(set(labels[:3])) == 1
    assert len(set(labels[3:])) == 1
    assert labels[0] != labels[3]


def test_kmeans_k_equals_n_and_determinism():
    points = np.arange(5, dtype=float).reshape(-1, 1)
    labels, _ = kmeans(points, 5, seed=0)
    assert sorted(labels) == [0, 1, 2, 3, 4]
    again, _ = kmeans(points, 5, seed=0)
    np.testing.assert_array_equal(labels, again)
    with pytest.raises(ValidationError):
        kmeans(points, 6, seed=0)


def test_indicator_embedding_normalizes_columns():
    X = indicator_embedding(np.array([0, 0, 1, 1]), 2).X
    h = 1 / np.sqrt(2)
    np.testing.assert_allclose(X, [[h, 0], [h, 0], [0, h], [0, h]], atol=1e-15)


def test_init_embedding_with_k_equal_n_is_permutation():
    points = np.diag([1.0, 2.0, 3.0, 4.0])
    X = init_embedding(points, 4, seed=1).X
    np.testing.assert_allclose(np.abs(X).sum(axis=0), np.ones(4))
    np.testing.assert_allclose(np.abs(X).sum(axis=1), np.ones(4))
    np.testing.assert_allclose(X.T @ X, np.eye(4), atol=1e-12)


def test_empty_cluster_is_refilled():
    rows = np.array([[0.0], [0.1], [5.0]])
    centers = np.array([[0.05], [2.5], [100.0]])
    labels = fill_empty_clusters(rows, np.array([0, 0, 1]), centers, 3)
    assert sorted(set(labels.tolist())) == [0, 1, 2]


def test_orthonormalize_returns_orthonormal_columns(rng):
    Q = orthonormalize(rng.random((8, 3)))
    np.testing.assert_allclose(Q.T @ Q, np.eye(3), atol=1e-12)


def test_confidence_matrix_undoes_degree_scaling():
    bundle = build_laplacian(np.array([[0.0, 4.0], [4.0, 0.0]]))
    embedding = indicator_embedding(np.array([0, 1]), 2)
    H = confidence_matrix(embedding, bundle)
    np.testing.assert_allclose(H.H, np.eye(2) / 2)


@pytest.mark.parametrize(
    "row, expected",
    [((0.9, 0.1), 0), ((0.5, 0.5), 0), ((-0.8, 0.3), 0), ((0.1, -0.7), 1)],
)
def test_harden(row, expected):
    assert harden(np.array([row]))[0] == expected


def test_confidence_matrix_rejects_non_finite():
    with pytest.raises(ValidationError):
        ConfidenceMatrix(np.array([[np.nan, 1.0]]))
    assert ConfidenceMatrix.from_labels([1, 0]).k == 2
