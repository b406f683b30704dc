"""Planted-partition comparative corpora with ground truth."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np
import pandas as pd

from mutual_hint.config import SynthConfig
from mutual_hint.modules.corpus.documents import CorpusPair, Document, write_corpus
from mutual_hint.network.schema import EntityClass, Source

logger = logging.getLogger(__name__)

ENTITY_CYCLE = (EntityClass.PERSON, EntityClass.ORGANIZATION, EntityClass.LOCATION)
NEWS_URL = "https://news.example.com/{index}"

TWEETS_FILE = "tweets.jsonl"
NEWS_FILE = "news.jsonl"
TRUTH_FILE = "truth.csv"


@dataclass(frozen=True)
class SyntheticCorpus:
    corpus: CorpusPair
    truth1: np.ndarray
    truth2: np.ndarray
    config: SynthConfig


class _Vocabulary:
    """Cluster blocks of ``vocab_per_cluster`` tokens followed by the shared background."""

    def __init__(self, cfg: SynthConfig):
        self.k = cfg.k
        self.block = cfg.vocab_per_cluster
        self.total = cfg.k * cfg.vocab_per_cluster + cfg.shared_vocab
        self.n_entities = int(round(cfg.entity_fraction * cfg.vocab_per_cluster))
        rest = self.total - self.block
        inside = cfg.p_in * self.block
        self.p_own = 1.0 if rest == 0 else inside / (inside + cfg.p_out * rest)

    def token(self, index: int) -> Tuple[str, EntityClass | None]:
        if index >= self.k * self.block:
            return f"bg{index - self.k * self.block}", None
        cluster, offset = divmod(index, self.block)
        if offset < self.n_entities:
            return f"c{cluster}e{offset}", ENTITY_CYCLE[offset % len(ENTITY_CYCLE)]
        return f"c{cluster}w{offset}", None

    def draw(self, rng: np.random.Generator, cluster: int, count: int) -> np.ndarray:
        own = rng.random(count) < self.p_own
        inside = cluster * self.block + rng.integers(self.block, size=count)
        outside = rng.integers(max(self.total - self.block, 1), size=count)
        outside = np.where(outside >= cluster * self.block, outside + self.block, outside)
        return np.where(own, inside, outside)


def _bag(vocab: _Vocabulary, indices: np.ndarray) -> Tuple[Dict[str, int], Dict[Tuple[str, EntityClass], int]]:
    words: Counter[str] = Counter()
    entities: Counter[Tuple[str, EntityClass]] = Counter()
    for index in indices.tolist():
        name, entity_class = vocab.token(index)
        if entity_class is None:
            words[name] += 1
        else:
            entities[(name, entity_class)] += 1
    return dict(sorted(words.items())), dict(sorted(entities.items(), key=lambda e: e[0][0]))


def _link_pools(rng: np.random.Generator, truth2: np.ndarray, cfg: SynthConfig) -> List[np.ndarray]:
    """Per cluster, the few news documents that tweets of the cluster link to.

    Shared link targets make the hyperlink meta-path connect same-cluster tweets.
    """
    pools = []
    for c in range(cfg.k):
        members = np.flatnonzero(truth2 == c)
        size = min(cfg.link_pool, members.size)
        pools.append(np.sort(rng.choice(members, size=size, replace=False)))
    return pools


def generate(cfg: SynthConfig) -> SyntheticCorpus:
    """Round-robin planted clusters; anchors link tweets to a pool of same-cluster news.

    Word draws, anchor choices and retweets come from independent streams of
    the seed, so changing ``anchor_rate`` leaves the document texts unchanged.
    """
    text_seq, anchor_seq, retweet_seq = np.random.SeedSequence(cfg.seed).spawn(3)
    text_rng = np.random.default_rng(text_seq)
    anchor_rng = np.random.default_rng(anchor_seq)
    retweet_rng = np.random.default_rng(retweet_seq)
    vocab = _Vocabulary(cfg)

    truth1 = np.arange(cfg.n1) % cfg.k
    truth2 = np.arange(cfg.n2) % cfg.k

    news: List[Document] = []
    for j in range(cfg.n2):
        words, entities = _bag(vocab, vocab.draw(text_rng, int(truth2[j]), cfg.words_per_doc2))
        news.append(
            Document(
                id=f"n{j}",
                source=Source.TYPE2,
                words=words,
                entities=entities,
                url=NEWS_URL.format(index=j),
            )
        )
    tweet_bags = [
        _bag(vocab, vocab.draw(text_rng, int(truth1[i]), cfg.words_per_doc1))
        for i in range(cfg.n1)
    ]

    link_pools = _link_pools(anchor_rng, truth2, cfg)
    n_anchored = int(round(cfg.anchor_rate * cfg.n1))
    anchored = np.sort(anchor_rng.permutation(cfg.n1)[:n_anchored])
    links: Dict[int, int] = {}
    for i in anchored.tolist():
        cluster = int(truth1[i])
        if anchor_rng.random() < cfg.noise_rate:
            cluster = int(anchor_rng.integers(cfg.k))
        j = int(anchor_rng.choice(link_pools[cluster]))
        links[i] = j
        # one object shared with the linked article
        words, entities = tweet_bags[i]
        if news[j].words:
            shared = sorted(news[j].words)[int(anchor_rng.integers(len(news[j].words)))]
            words[shared] = words.get(shared, 0) + 1
        else:
            keys = sorted(news[j].entities, key=lambda e: e[0])
            shared_entity = keys[int(anchor_rng.integers(len(keys)))]
            entities[shared_entity] = entities.get(shared_entity, 0) + 1

    tweets: List[Document] = []
    for i, (words, entities) in enumerate(tweet_bags):
        retweet_of = None
        earlier = np.arange(truth1[i], i, cfg.k)
        if earlier.size and retweet_rng.random() < cfg.retweet_rate:
            retweet_of = f"t{int(retweet_rng.choice(earlier))}"
        tweets.append(
            Document(
                id=f"t{i}",
                source=Source.TYPE1,
                words=dict(sorted(words.items())),
                entities=entities,
                hyperlinks=frozenset({news[links[i]].url}) if i in links else frozenset(),
                retweet_of=retweet_of,
            )
        )

    corpus = CorpusPair(tuple(tweets), tuple(news))
    logger.info(
        f"Generated k={cfg.k} corpus: {cfg.n1} tweets ({n_anchored} linked), {cfg.n2} news"
    )
    return SyntheticCorpus(corpus=corpus, truth1=truth1, truth2=truth2, config=cfg)


def truth_frame(result: SyntheticCorpus) -> pd.DataFrame:
    corpus = result.corpus
    return pd.DataFrame(
        {
            "collection": [Source.TYPE1.value] * corpus.n1 + [Source.TYPE2.value] * corpus.n2,
            "id": corpus.ids(Source.TYPE1) + corpus.ids(Source.TYPE2),
            "cluster": np.concatenate([result.truth1, result.truth2]),
        }
    )


def write_synthetic(result: SyntheticCorpus, out_dir: str | Path) -> Tuple[Path, Path, Path]:
    """Write tweets.jsonl, news.jsonl and truth.csv into ``out_dir``."""
    out_dir = Path(out_dir)
    paths = (out_dir / TWEETS_FILE, out_dir / NEWS_FILE, out_dir / TRUTH_FILE)
    write_corpus(result.corpus, paths[0], paths[1])
    truth_frame(result).to_csv(paths[2], index=False, lineterminator="\n")
    return paths
