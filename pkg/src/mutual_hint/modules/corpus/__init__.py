from .anchors import AnchorSet, extract_anchors
from .documents import CorpusPair, Document, parse_corpus, write_corpus

__all__ = [
    "AnchorSet",
    "extract_anchors",
    "CorpusPair",
    "Document",
    "parse_corpus",
    "write_corpus",
]
