"""Document parsing and anchor extraction."""

import json

import numpy as np
import pytest

from conftest import news, tweet
from mutual_hint.errors import ParseError, ValidationError
from mutual_hint.modules.corpus.anchors import AnchorSet, extract_anchors
from mutual_hint.modules.corpus.documents import (
    CorpusPair,
    Document,
    parse_corpus,
    write_corpus,
)
from mutual_hint.network.schema import EntityClass, ObjectClass, Source


def _record(id, source="tweet", **fields):
    record = {"id": id, "source": source}
    record.update(fields)
    return json.dumps(record)


def _write(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def test_parse_corpus_counts_and_order(tmp_path):
    t = _write(tmp_path / "t.jsonl", [_record("t1"), _record("t2"), _record("t3")])
    n = _write(
        tmp_path / "n.jsonl",
        [_record("n1", "news", url="http://a"), _record("n2", "news")],
    )
    corpus = parse_corpus(t, n)
    assert corpus.n1 == 3
    assert corpus.n2 == 2
    assert corpus.ids(Source.TYPE1) == ["t1", "t2", "t3"]


def test_parse_corpus_keeps_multiplicities(tmp_path):
    t = _write(
        tmp_path / "t.jsonl",
        [_record("t1", words=[["vote", 2]], entities=[["Obama", "P", 1], ["Obama", "P", 2]])],
    )
    n = _write(tmp_path / "n.jsonl", [_record("n1", "news")])
    doc = parse_corpus(t, n).collection1[0]
    assert doc.words == {"vote": 2}
    assert doc.entities == {("Obama", EntityClass.PERSON): 3}


def test_duplicate_id_is_reported(tmp_path):
    t = _write(tmp_path / "t.jsonl", [_record("t1"), _record("t1")])
    n = _write(tmp_path / "n.jsonl", [_record("n1", "news")])
    with pytest.raises(ValidationError, match="t1"):
        parse_corpus(t, n)


def test_malformed_line_names_line_number(tmp_path):
    t = _write(tmp_path / "t.jsonl", [_record("t1"), "{not json"])
    n = _write(tmp_path / "n.jsonl", [_record("n1", "news")])
    with pytest.raises(ParseError) as info:
        parse_corpus(t, n)
    assert info.value.line_number == 2
    assert ":2:" in str(info.value)


def test_news_record_with_hashtags_is_rejected(tmp_path):
    t = _write(tmp_path / "t.jsonl", [_record("t1")])
    n = _write(tmp_path / "n.jsonl", [_record("n1", "news", hashtags=[["x", 1]])])
    with pytest.raises(ParseError):
        parse_corpus(t, n)


def test_unknown_field_is_rejected(tmp_path):
    t = _write(tmp_path / "t.jsonl", [_record("t1", likes=3)])
    n = _write(tmp_path / "n.jsonl", [_record("n1", "news")])
    with pytest.raises(ParseError, match="likes"):
        parse_corpus(t, n)


def test_missing_file_raises_file_not_found(tmp_path):
    with pytest.raises(FileNotFoundError, match="missing.jsonl"):
        parse_corpus(tmp_path / "missing.jsonl", tmp_path / "other.jsonl")


def test_retweet_must_reference_existing_tweet():
    with pytest.raises(ValidationError, match="t9"):
        CorpusPair((tweet("t1", retweet_of="t9"),), (news("n1"),))


def test_zero_multiplicity_is_invalid():
    with pytest.raises(ValidationError):
        Document(id="t1", source=Source.TYPE1, words={"a": 0})


def test_written_corpus_parses_back(tmp_path):
    corpus = CorpusPair(
        (
            tweet("t1", {"a": 2}, {("Paris", EntityClass.LOCATION): 1}, ["http://x"]),
            tweet("t2", retweet_of="t1", hashtags={"vote": 1}),
        ),
        (news("n1", {"a": 1}, url="http://x"),),
    )
    write_corpus(corpus, tmp_path / "t.jsonl", tmp_path / "n.jsonl")
    assert parse_corpus(tmp_path / "t.jsonl", tmp_path / "n.jsonl") == corpus


def test_hyperlink_objects_are_normalized():
    doc = tweet("t1", hyperlinks=["HTTP://News.Example/a/"])
    assert doc.objects(ObjectClass.HYPERLINK) == {"http://news.example/a": 1}


# -------------------------
# Anchors
# -------------------------


def test_anchor_needs_a_common_object():
    corpus = CorpusPair(
        (
            tweet("t1", {"climate": 1}, hyperlinks=["http://n/1"]),
            tweet("t2", {"sports": 1}, hyperlinks=["http://n/1"]),
        ),
        (news("n1", {"climate": 3}, url="http://n/1"),),
    )
    assert extract_anchors(corpus).pairs == ((0, 0),)


def test_anchor_keeps_news_with_most_common_objects():
    corpus = CorpusPair(
        (tweet("t1", {"a": 1, "b": 1, "c": 1}, hyperlinks=["http://n/1", "http://n/2"]),),
        (
            news("n1", {"a": 1, "b": 1}, url="http://n/1"),
            news("n2", {"a": 1, "b": 1, "c": 1}, url="http://n/2"),
        ),
    )
    assert extract_anchors(corpus).pairs == ((0, 1),)


def test_anchor_tie_goes_to_lowest_news_index():
    corpus = CorpusPair(
        (tweet("t1", {"a": 1}, hyperlinks=["http://n/2", "http://n/1"]),),
        (news("n1", {"a": 1}, url="http://n/1"), news("n2", {"a": 1}, url="http://n/2")),
    )
    assert extract_anchors(corpus).pairs == ((0, 0),)


def test_anchor_counts_entities_and_url_normalization():
    corpus = CorpusPair(
        (tweet("t1", entities={("Obama", EntityClass.PERSON): 1}, hyperlinks=["HTTP://N/1/"]),),
        (news("n1", entities={("Obama", EntityClass.PERSON): 1}, url="http://n/1"),),
    )
    assert extract_anchors(corpus).size == 1


def test_min_common_threshold():
    corpus = CorpusPair(
        (tweet("t1", {"a": 1}, hyperlinks=["http://n/1"]),),
        (news("n1", {"a": 1}, url="http://n/1"),),
    )
    assert extract_anchors(corpus, min_common=2).size == 0
    with pytest.raises(ValidationError):
        extract_anchors(corpus, min_common=0)


def test_anchor_set_rejects_two_news_per_tweet():
    with pytest.raises(ValidationError):
        AnchorSet(((0, 0), (0, 1)))
    assert AnchorSet(((1, 0), (0, 0))).pairs == ((0, 0), (1, 0))


def _random_corpus(rng, n1=8, n2=4):
    vocab = [f"w{i}" for i in range(6)]
    urls = [f"http://n/{j}" for j in range(n2)]
    news_docs = tuple(
        news(f"n{j}", {w: 1 for w in rng.choice(vocab, 3, replace=False)}, url=urls[j])
        for j in range(n2)
    )
    tweets = tuple(
        tweet(
            f"t{i}",
            {w: 1 for w in rng.choice(vocab, 2, replace=False)},
            hyperlinks=set(rng.choice(urls, rng.integers(0, 3), replace=False)),
        )
        for i in range(n1)
    )
    return CorpusPair(tweets, news_docs)


@pytest.mark.parametrize("seed", range(20))
def test_anchor_properties_on_random_corpora(seed):
    rng = np.random.default_rng(seed)
    corpus = _random_corpus(rng)
    anchors = extract_anchors(corpus)

    idx1 = [i for i, _ in anchors]
    assert len(idx1) == len(set(idx1))
    for i, j in anchors:
        assert len(corpus.collection1[i].common_objects(corpus.collection2[j])) >= 1
    assert extract_anchors(corpus) == anchors

    # removing one hyperlink never adds pairs
    target = next((i for i, d in enumerate(corpus.collection1) if d.hyperlinks), None)
    if target is not None:
        doc = corpus.collection1[target]
        dropped = sorted(doc.hyperlinks)[0]
        reduced = tweet(doc.id, doc.words, hyperlinks=doc.hyperlinks - {dropped})
        tweets = list(corpus.collection1)
        tweets[target] = reduced
        smaller = extract_anchors(CorpusPair(tuple(tweets), corpus.collection2))
        assert set(smaller.pairs) - set(anchors.pairs) <= {
            p for p in smaller.pairs if p[0] == target
        }
        assert smaller.size <= anchors.size
