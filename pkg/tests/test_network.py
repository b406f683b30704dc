"""Schema loading, meta-path resolution and schema graph rendering."""

import numpy as np
import pytest

from mutual_hint.network.engine import (
    MetaPath,
    MetaPathKind,
    build_network_schema,
    network_schema,
)
from mutual_hint.network.schema import ObjectClass, Source, load_schema
from mutual_hint.network.visualizer import build_nx_graph, render_pyvis_network


def test_default_meta_path_sets():
    tweet_paths = network_schema.meta_paths(Source.TYPE1)
    news_paths = network_schema.meta_paths(Source.TYPE2)
    assert [p.id for p in tweet_paths] == [
        "tweet-retweet",
        "tweet-word",
        "tweet-entity",
        "tweet-mention",
        "tweet-hashtag",
        "tweet-hyperlink",
    ]
    assert [p.id for p in news_paths] == [
        "news-word",
        "news-person",
        "news-organization",
        "news-location",
    ]
    entity = tweet_paths[2]
    assert entity.object_classes == (
        ObjectClass.ENTITY_P,
        ObjectClass.ENTITY_O,
        ObjectClass.ENTITY_L,
    )


def test_split_retweet_gives_seven_tweet_paths():
    paths = network_schema.meta_paths(Source.TYPE1, split_retweet=True)
    assert len(paths) == 7
    assert paths[0].kind is MetaPathKind.RETWEET
    assert paths[1].kind is MetaPathKind.COMMON_RETWEET


def test_default_weights_are_uniform():
    np.testing.assert_allclose(network_schema.default_weights(Source.TYPE1), [1 / 6] * 6)
    np.testing.assert_allclose(network_schema.default_weights(Source.TYPE2), [0.25] * 4)
    assert network_schema.default_weights(Source.TYPE1, split_retweet=True).sum() == pytest.approx(1)


def test_news_meta_paths_reject_tweet_only_objects():
    with pytest.raises(ValueError):
        MetaPath("bad", Source.TYPE2, MetaPathKind.COMMON_OBJECT, (ObjectClass.HASHTAG,))
    with pytest.raises(ValueError):
        MetaPath("bad", Source.TYPE2, MetaPathKind.RETWEET)
    with pytest.raises(ValueError):
        MetaPath("bad", Source.TYPE1, MetaPathKind.COMMON_OBJECT)


def test_object_relations_are_the_star_spokes():
    targets = {r.to_node for r in network_schema.object_relations(Source.TYPE2)}
    assert targets == {"Word", "Person", "Organization", "Location"}
    tweet_targets = {r.to_node for r in network_schema.object_relations(Source.TYPE1)}
    assert "News" not in tweet_targets and "Tweet" not in tweet_targets


def test_load_schema_rejects_unknown_targets(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("name: Tweet\nrelationships:\n  has_word:\n    target: Nowhere\n")
    with pytest.raises(ValueError, match="unknown node"):
        load_schema(path)


def test_meta_path_classes_follow_relation_targets(tmp_path):
    (tmp_path / "docs.yaml").write_text(
        "entities:\n"
        "  Tweet:\n"
        "    relationships:\n"
        "      says: Word\n"
        "    meta_paths:\n"
        "      - {id: t-w, kind: common_object, via: [says]}\n"
        "  News:\n"
        "    relationships:\n"
        "      tells: {target: Word, description: body words}\n"
        "    meta_paths:\n"
        "      - {id: n-w, kind: common_object, via: [tells]}\n"
        "  Word: {}\n"
    )
    schema = build_network_schema(tmp_path)
    assert schema.meta_paths(Source.TYPE1)[0].object_classes == (ObjectClass.WORD,)
    assert [r.name for r in schema.object_relations(Source.TYPE2)] == ["tells"]


def test_schema_graph_joins_both_stars(tmp_path):
    graph = build_nx_graph()
    assert graph.has_edge("Tweet", "News")
    assert graph.has_edge("News", "Word")
    html = tmp_path / "schema.html"
    render_pyvis_network(graph, html_path=html)
    assert html.exists()
