"""Shared fixtures: small hand-built corpora and the four-tweet anchoring example."""

from typing import Dict, Optional, Tuple

import numpy as np
import pytest

from mutual_hint.config import SynthConfig
from mutual_hint.modules.corpus.anchors import AnchorSet
from mutual_hint.modules.corpus.documents import CorpusPair, Document
from mutual_hint.modules.simmat.transition import build_transition
from mutual_hint.modules.spectral.confidence import ConfidenceMatrix
from mutual_hint.modules.synth.generator import generate
from mutual_hint.network.schema import EntityClass, Source


def tweet(
    id: str,
    words: Optional[Dict[str, int]] = None,
    entities: Optional[Dict[Tuple[str, EntityClass], int]] = None,
    hyperlinks=(),
    retweet_of: Optional[str] = None,
    hashtags: Optional[Dict[str, int]] = None,
    mentions: Optional[Dict[str, int]] = None,
) -> Document:
    return Document(
        id=id,
        source=Source.TYPE1,
        words=words or {},
        entities=entities or {},
        hashtags=hashtags or {},
        mentions=mentions or {},
        hyperlinks=frozenset(hyperlinks),
        retweet_of=retweet_of,
    )


def news(
    id: str,
    words: Optional[Dict[str, int]] = None,
    entities: Optional[Dict[Tuple[str, EntityClass], int]] = None,
    url: Optional[str] = None,
) -> Document:
    return Document(
        id=id, source=Source.TYPE2, words=words or {}, entities=entities or {}, url=url
    )


@pytest.fixture
def anchoring_example():
    """Four tweets in clusters {t1, t3}, {t2, t4}; anchored news t1', t3' share a cluster.

    Returns (H1, H2, transition) with binary indicator confidence matrices.
    """
    anchors = AnchorSet(((0, 0), (2, 0), (1, 2), (3, 2)))
    transition = build_transition(anchors, 4, 4)
    H1 = ConfidenceMatrix.from_labels([0, 1, 0, 1], 2)
    H2 = ConfidenceMatrix.from_labels([0, 1, 0, 1], 2)
    return H1, H2, transition


@pytest.fixture(scope="session")
def small_synthetic():
    """Three planted clusters, 60 documents per side, half of the tweets anchored."""
    return generate(SynthConfig(k=3, n1=60, n2=60, words_per_doc2=40, seed=11))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
