"""Annotated document model for both collections and its JSON-Lines codec."""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError as PydanticValidationError
from pydantic import model_validator

from mutual_hint.errors import ParseError, ValidationError
from mutual_hint.network.schema import (
    ENTITY_OBJECT_CLASSES,
    EntityClass,
    ObjectClass,
    Source,
)

logger = logging.getLogger(__name__)

EntityKey = Tuple[str, EntityClass]


def normalize_url(url: str) -> str:
    """Lowercase and strip trailing slashes; short-url expansion happens upstream."""
    return url.strip().lower().rstrip("/")


@dataclass(frozen=True)
class Document:
    id: str
    source: Source
    words: Dict[str, int] = field(default_factory=dict)
    entities: Dict[EntityKey, int] = field(default_factory=dict)
    hashtags: Dict[str, int] = field(default_factory=dict)
    mentions: Dict[str, int] = field(default_factory=dict)
    hyperlinks: FrozenSet[str] = frozenset()
    retweet_of: Optional[str] = None
    url: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("document id must be non-empty")
        for name, multiset in (
            ("words", self.words),
            ("entities", self.entities),
            ("hashtags", self.hashtags),
            ("mentions", self.mentions),
        ):
            bad = [k for k, c in multiset.items() if c < 1]
            if bad:
                raise ValidationError(
                    f"document '{self.id}': {name} multiplicities must be >= 1, got {bad[0]!r}"
                )
        if self.source is Source.TYPE2 and (
            self.hashtags or self.mentions or self.hyperlinks or self.retweet_of
        ):
            raise ValidationError(
                f"document '{self.id}': news documents carry no hashtags, mentions, "
                "hyperlinks or retweets"
            )
        if self.source is Source.TYPE1 and self.url:
            raise ValidationError(f"document '{self.id}': tweets carry no canonical url")

    def objects(self, object_class: ObjectClass) -> Dict[str, int]:
        """Objects of one class with their multiplicities (the link weights)."""
        if object_class is ObjectClass.WORD:
            return self.words
        if object_class is ObjectClass.MENTION:
            return self.mentions
        if object_class is ObjectClass.HASHTAG:
            return self.hashtags
        if object_class is ObjectClass.HYPERLINK:
            return {normalize_url(u): 1 for u in self.hyperlinks}
        return {
            name: count
            for (name, entity_class), count in self.entities.items()
            if ENTITY_OBJECT_CLASSES[entity_class] is object_class
        }

    def common_objects(self, other: "Document") -> FrozenSet[Tuple[str, str]]:
        """Distinct words and typed entities shared with ``other``."""
        shared = {("word", w) for w in self.words.keys() & other.words.keys()}
        shared |= {(e.value, name) for name, e in self.entities.keys() & other.entities.keys()}
        return frozenset(shared)


@dataclass(frozen=True)
class CorpusPair:
    collection1: Tuple[Document, ...]
    collection2: Tuple[Document, ...]

    def __post_init__(self) -> None:
        for side, docs in ((Source.TYPE1, self.collection1), (Source.TYPE2, self.collection2)):
            seen: set[str] = set()
            for doc in docs:
                if doc.source is not side:
                    raise ValidationError(
                        f"document '{doc.id}' is {doc.source.value}, expected {side.value}"
                    )
                if doc.id in seen:
                    raise ValidationError(f"duplicate {side.value} id '{doc.id}'")
                seen.add(doc.id)

        ids1 = {d.id for d in self.collection1}
        for doc in self.collection1:
            if doc.retweet_of is not None and doc.retweet_of not in ids1:
                raise ValidationError(
                    f"tweet '{doc.id}' retweets unknown tweet '{doc.retweet_of}'"
                )

    @property
    def n1(self) -> int:
        return len(self.collection1)

    @property
    def n2(self) -> int:
        return len(self.collection2)

    def side(self, side: Source) -> Tuple[Document, ...]:
        return self.collection1 if side is Source.TYPE1 else self.collection2

    def ids(self, side: Source) -> List[str]:
        return [d.id for d in self.side(side)]

    def require_non_empty(self) -> None:
        if not self.collection1 or not self.collection2:
            raise ValidationError(
                f"both collections must be non-empty (got {self.n1} tweets, {self.n2} news)"
            )


# -------------------------
# JSON-Lines records
# -------------------------


class DocumentRecord(BaseModel):
    """One line of a corpus file."""

    model_config = ConfigDict(extra="forbid")

    id: str = Field(..., min_length=1, description="Identifier, unique within the file.")
    source: Literal["tweet", "news"]
    words: List[Tuple[str, int]] = Field(default_factory=list)
    entities: List[Tuple[str, Literal["P", "O", "L"], int]] = Field(default_factory=list)
    hashtags: List[Tuple[str, int]] = Field(default_factory=list)
    mentions: List[Tuple[str, int]] = Field(default_factory=list)
    hyperlinks: List[str] = Field(default_factory=list)
    retweet_of: Optional[str] = None
    url: Optional[str] = None

    @model_validator(mode="after")
    def _check_counts_and_source(self) -> "DocumentRecord":
        for name in ("words", "hashtags", "mentions"):
            for token, count in getattr(self, name):
                if count < 1:
                    raise ValueError(f"{name} entry {token!r} has multiplicity {count} < 1")
        for token, _, count in self.entities:
            if count < 1:
                raise ValueError(f"entities entry {token!r} has multiplicity {count} < 1")
        if self.source == "news" and (
            self.hashtags or self.mentions or self.hyperlinks or self.retweet_of
        ):
            raise ValueError("news records must leave hashtags, mentions, hyperlinks, retweet_of empty")
        if self.source == "tweet" and self.url:
            raise ValueError("tweet records must leave url null")
        return self

    def to_document(self) -> Document:
        def counts(pairs: Iterable[Tuple[str, int]]) -> Dict[str, int]:
            out: Counter[str] = Counter()
            for token, count in pairs:
                out[token] += count
            return dict(out)

        entities: Counter[EntityKey] = Counter()
        for name, entity_class, count in self.entities:
            entities[(name, EntityClass(entity_class))] += count

        return Document(
            id=self.id,
            source=Source(self.source),
            words=counts(self.words),
            entities=dict(entities),
            hashtags=counts(self.hashtags),
            mentions=counts(self.mentions),
            hyperlinks=frozenset(self.hyperlinks),
            retweet_of=self.retweet_of,
            url=self.url,
        )

    @classmethod
    def from_document(cls, doc: Document) -> "DocumentRecord":
        return cls(
            id=doc.id,
            source=doc.source.value,
            words=list(doc.words.items()),
            entities=[(name, e.value, c) for (name, e), c in doc.entities.items()],
            hashtags=list(doc.hashtags.items()),
            mentions=list(doc.mentions.items()),
            hyperlinks=sorted(doc.hyperlinks),
            retweet_of=doc.retweet_of,
            url=doc.url,
        )


def read_documents(path: str | Path, expected: Source) -> List[Document]:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"corpus file not found: {path}")

    documents: List[Document] = []
    with path.open("r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, 1):
            if not line.strip():
                continue
            try:
                record = DocumentRecord.model_validate(json.loads(line))
            except json.JSONDecodeError as e:
                raise ParseError(f"malformed JSON ({e.msg})", str(path), line_number) from e
            except PydanticValidationError as e:
                first = e.errors()[0]
                where = ".".join(str(p) for p in first["loc"]) or "record"
                raise ParseError(f"{where}: {first['msg']}", str(path), line_number) from e
            if record.source != expected.value:
                raise ParseError(
                    f"record '{record.id}' is {record.source}, expected {expected.value}",
                    str(path),
                    line_number,
                )
            documents.append(record.to_document())
    return documents


def parse_corpus(path1: str | Path, path2: str | Path) -> CorpusPair:
    """Read the tweet file and the news file into a validated CorpusPair."""
    corpus = CorpusPair(
        collection1=tuple(read_documents(path1, Source.TYPE1)),
        collection2=tuple(read_documents(path2, Source.TYPE2)),
    )
    logger.info(f"Parsed corpus: {corpus.n1} tweets from {path1}, {corpus.n2} news from {path2}")
    return corpus


def write_documents(documents: Sequence[Document], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as f:
        for doc in documents:
            f.write(DocumentRecord.from_document(doc).model_dump_json())
            f.write("\n")


def write_corpus(corpus: CorpusPair, path1: str | Path, path2: str | Path) -> None:
    write_documents(corpus.collection1, path1)
    write_documents(corpus.collection2, path2)
