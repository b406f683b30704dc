"""Anchor-text extraction: tweet/news pairs joined by a hyperlink and shared objects."""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

from mutual_hint.errors import ValidationError
from mutual_hint.modules.corpus.documents import CorpusPair, normalize_url

logger = logging.getLogger(__name__)

AnchorPair = Tuple[int, int]  # (index into collection1, index into collection2)


@dataclass(frozen=True)
class AnchorSet:
    """Anchor pairs, sorted by tweet index; each tweet anchors at most one news."""

    pairs: Tuple[AnchorPair, ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.pairs))
        object.__setattr__(self, "pairs", ordered)
        seen: set[int] = set()
        for idx1, idx2 in ordered:
            if idx1 < 0 or idx2 < 0:
                raise ValidationError(f"anchor ({idx1}, {idx2}) has a negative index")
            if idx1 in seen:
                raise ValidationError(f"tweet {idx1} anchors more than one news document")
            seen.add(idx1)

    @property
    def size(self) -> int:
        return len(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[AnchorPair]:
        return iter(self.pairs)

    def subset(self, positions: Sequence[int]) -> "AnchorSet":
        """Anchors at the given positions of ``pairs``."""
        return AnchorSet(tuple(self.pairs[p] for p in positions))


def extract_anchors(corpus: CorpusPair, min_common: int = 1) -> AnchorSet:
    """Pair each tweet with the linked news document it shares the most objects with.

    A (tweet, news) candidate needs a hyperlink matching the news url and at
    least ``min_common`` distinct common words or entities. Among several
    qualifying news documents the largest common-object count wins, then the
    lowest news index.
    """
    if min_common < 1:
        raise ValidationError(f"min_common must be >= 1, got {min_common}")

    url_index: Dict[str, List[int]] = defaultdict(list)
    for j, news in enumerate(corpus.collection2):
        if news.url:
            url_index[normalize_url(news.url)].append(j)

    pairs: List[AnchorPair] = []
    linked = 0
    for i, tweet in enumerate(corpus.collection1):
        candidates = sorted(
            {j for link in tweet.hyperlinks for j in url_index.get(normalize_url(link), [])}
        )
        if not candidates:
            continue
        linked += 1

        best: Tuple[int, int] | None = None  # (common count, j)
        for j in candidates:
            common = len(tweet.common_objects(corpus.collection2[j]))
            if common < min_common:
                continue
            if best is None or common > best[0]:
                best = (common, j)
        if best is not None:
            pairs.append((i, best[1]))

    anchors = AnchorSet(tuple(pairs))
    logger.info(
        f"Extracted {anchors.size} anchors from {linked} linked tweets "
        f"({linked - anchors.size} failed the common-object filter)"
    )
    return anchors
