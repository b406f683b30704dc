"""Cross-collection cluster links through anchored documents."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence

from mutual_hint.errors import ValidationError
from mutual_hint.modules.corpus.anchors import AnchorSet
from mutual_hint.modules.eval.metrics import majority_mapping

logger = logging.getLogger(__name__)

DEFAULT_LINK_THRESHOLD = 0.8


@dataclass(frozen=True)
class ClusterLink:
    cluster1: int
    cluster2: int
    anchored_fraction: float


def link_clusters(
    labels1: Sequence[int],
    labels2: Sequence[int],
    anchors: AnchorSet,
    link_threshold: float = DEFAULT_LINK_THRESHOLD,
) -> List[ClusterLink]:
    """Link a tweet cluster to the news cluster holding at least ``link_threshold`` of its anchors."""
    if not 0 < link_threshold <= 1:
        raise ValidationError(f"link_threshold must lie in (0, 1], got {link_threshold}")
    links = [
        ClusterLink(c1, c2, float(fraction))
        for c1, (c2, fraction) in sorted(majority_mapping(labels1, labels2, anchors).items())
        if fraction >= link_threshold
    ]
    logger.info(f"Linked {len(links)} cluster pair(s) at threshold {link_threshold}")
    return links
