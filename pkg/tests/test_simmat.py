"""Weighted meta-path similarity and anchor transition matrices."""

import numpy as np
import pytest
import scipy.sparse as sp

from conftest import tweet
from mutual_hint.errors import ConfigError, ValidationError
from mutual_hint.modules.corpus.anchors import AnchorSet
from mutual_hint.modules.hin import CountMatrix, build_count_matrix
from mutual_hint.modules.simmat import (
    build_similarity,
    build_transition,
    hint_similarity,
    transition_anchors,
    validate_weights,
)
from mutual_hint.network.engine import MetaPath, MetaPathKind
from mutual_hint.network.schema import ObjectClass, Source


def _path(name="p", object_class=ObjectClass.WORD):
    return MetaPath(name, Source.TYPE1, MetaPathKind.COMMON_OBJECT, (object_class,))


def _counts(matrix, name="p"):
    return CountMatrix.from_sparse(_path(name), sp.csr_matrix(np.asarray(matrix)))


def test_isolated_self_similarity_is_one():
    counts = _counts([[4]])
    assert hint_similarity(0, 0, [counts], [1.0]) == pytest.approx(1.0)


def test_pairwise_normalization():
    # A(x,y)=2 with row totals 10 and 6
    counts = _counts([[8, 2], [2, 4]])
    assert hint_similarity(0, 1, [counts], [1.0]) == pytest.approx(0.25)


def test_weighted_combination():
    first = _counts([[4, 1], [1, 4]], "a")  # (1+1)/(5+5) = 0.2
    second = _counts([[1, 2], [2, 3]], "b")  # (2+2)/(3+5) = 0.5
    assert hint_similarity(0, 1, [first, second], [0.5, 0.5]) == pytest.approx(0.35)


def test_zero_counts_give_zero_matrix():
    sim = build_similarity([_counts(np.zeros((3, 3), dtype=int))], [1.0])
    assert sim.S.nnz == 0


def test_matrix_matches_pairwise_similarity():
    docs = [tweet("a", {"x": 2, "y": 1}), tweet("b", {"x": 1}), tweet("c", {"y": 3, "z": 1})]
    counts = [
        build_count_matrix(docs, _path("w")),
        CountMatrix.from_sparse(_path("h", ObjectClass.HASHTAG), sp.csr_matrix((3, 3), dtype=int)),
    ]
    weights = [0.7, 0.3]
    S = build_similarity(counts, weights).dense()
    for x in range(3):
        for y in range(3):
            assert S[x, y] == pytest.approx(hint_similarity(x, y, counts, weights))
    np.testing.assert_array_equal(S, S.T)
    assert S.max() <= 1.0


def test_weights_must_sum_to_one():
    with pytest.raises(ConfigError):
        validate_weights([0.5, 0.4], 2)
    with pytest.raises(ConfigError):
        validate_weights([1.5, -0.5], 2)
    with pytest.raises(ConfigError):
        validate_weights([1.0], 2)


def test_similarity_rejects_bad_indices():
    with pytest.raises(ValidationError):
        hint_similarity(0, 5, [_counts([[1]])], [1.0])


def test_transition_has_one_entry_per_anchor():
    anchors = AnchorSet(((0, 0), (2, 0), (1, 2), (3, 2)))
    transition = build_transition(anchors, 4, 4)
    T = transition.T12.toarray()
    assert T.sum() == 4
    np.testing.assert_array_equal(T.sum(axis=1), [1, 1, 1, 1])
    np.testing.assert_array_equal(transition.anchors_per_news(), [2, 0, 2, 0])
    np.testing.assert_array_equal(transition.T21.toarray(), T.T)
    assert transition_anchors(transition) == anchors


def test_empty_transition():
    transition = build_transition(AnchorSet(), 3, 2)
    assert transition.anchor_count == 0
    assert transition.T12.nnz == 0
    assert transition.shape == (3, 2)


def test_many_tweets_to_one_news():
    T = build_transition(AnchorSet(((0, 0), (1, 0))), 2, 2).T12.toarray()
    np.testing.assert_array_equal(T[:, 0], [1, 1])


def test_transition_bounds_checked():
    with pytest.raises(ValidationError):
        build_transition(AnchorSet(((0, 3),)), 2, 2)
