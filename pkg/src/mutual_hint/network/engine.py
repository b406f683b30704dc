from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np

from mutual_hint.network.schema import (
    SOURCE_NODES,
    NodeSchema,
    ObjectClass,
    RelationKey,
    RelationSchema,
    Source,
    load_schema,
)

logger = logging.getLogger(__name__)

SCHEMA_SOURCE_PATH = Path(__file__).with_name("schema_data")

TYPE2_OBJECT_CLASSES = frozenset(
    {ObjectClass.WORD, ObjectClass.ENTITY_P, ObjectClass.ENTITY_O, ObjectClass.ENTITY_L}
)


class MetaPathKind(str, Enum):
    RETWEET = "retweet"
    COMMON_RETWEET = "common_retweet"
    RETWEET_RELATION = "retweet_relation"  # RETWEET + COMMON_RETWEET in one matrix
    COMMON_OBJECT = "common_object"


RETWEET_KINDS = frozenset(
    {MetaPathKind.RETWEET, MetaPathKind.COMMON_RETWEET, MetaPathKind.RETWEET_RELATION}
)


@dataclass(frozen=True)
class MetaPath:
    id: str
    side: Source
    kind: MetaPathKind
    # Several classes mean one merged path (e.g. Tweet-Entity-Tweet over P, O and L).
    object_classes: Tuple[ObjectClass, ...] = ()

    def __post_init__(self) -> None:
        if self.kind in RETWEET_KINDS:
            if self.side is not Source.TYPE1:
                raise ValueError(f"Meta-path '{self.id}': retweet paths exist only on Type1")
            if self.object_classes:
                raise ValueError(f"Meta-path '{self.id}': retweet paths take no object class")
            return

        if not self.object_classes:
            raise ValueError(f"Meta-path '{self.id}': common-object path needs an object class")
        if self.side is Source.TYPE2:
            illegal = set(self.object_classes) - TYPE2_OBJECT_CLASSES
            if illegal:
                names = ", ".join(sorted(c.value for c in illegal))
                raise ValueError(
                    f"Meta-path '{self.id}': Type2 documents carry no {names} objects"
                )


# -------------------------
# Network Schema Engine
# -------------------------


@dataclass
class NetworkSchema:
    nodes: Dict[str, NodeSchema]
    relations: Dict[RelationKey, RelationSchema]

    def document_node(self, side: Source) -> NodeSchema:
        return self.nodes[SOURCE_NODES[side]]

    def list_relations_from(self, node_name: str) -> List[RelationSchema]:
        return [r for r in self.relations.values() if r.from_node == node_name]

    def object_relations(self, side: Source) -> List[RelationSchema]:
        """Document-to-object links of one star schema (the spokes)."""
        return [
            r
            for r in self.list_relations_from(SOURCE_NODES[side])
            if r.to_node not in SOURCE_NODES.values()
        ]

    # ---------- Meta-paths ----------

    def meta_paths(self, side: Source, split_retweet: bool = False) -> List[MetaPath]:
        """Resolve the declared length-2 meta-paths of one document type.

        With ``split_retweet`` the merged retweet relation is replaced by the
        separate Retweet and CommonRetweet paths.
        """
        node = self.document_node(side)
        paths: List[MetaPath] = []
        for spec in node.meta_paths:
            kind = MetaPathKind(spec.kind)
            if kind is MetaPathKind.RETWEET_RELATION and split_retweet:
                paths.append(MetaPath(f"{spec.id}-direct", side, MetaPathKind.RETWEET))
                paths.append(MetaPath(f"{spec.id}-common", side, MetaPathKind.COMMON_RETWEET))
                continue

            classes: List[ObjectClass] = []
            for rel_name in spec.via:
                rel = node.relationships.get(rel_name)
                if rel is None:
                    raise ValueError(
                        f"Meta-path '{spec.id}' goes via unknown relation '{node.name}.{rel_name}'"
                    )
                classes.append(ObjectClass(rel.target))
            paths.append(MetaPath(spec.id, side, kind, tuple(classes)))
        return paths

    def default_weights(self, side: Source, split_retweet: bool = False) -> np.ndarray:
        """Uniform meta-path weights summing to one."""
        count = len(self.meta_paths(side, split_retweet))
        return np.full(count, 1.0 / count)


def build_network_schema(schema_path: str | Path = SCHEMA_SOURCE_PATH) -> NetworkSchema:
    nodes, relations = load_schema(schema_path)
    for side, node_name in SOURCE_NODES.items():
        if node_name not in nodes:
            raise ValueError(f"schema is missing the {side.value} document node '{node_name}'")

    schema = NetworkSchema(nodes=nodes, relations=relations)
    # Fail early on bad meta-path declarations.
    for side in Source:
        schema.meta_paths(side, split_retweet=True)
    logger.debug(f"Loaded network schema with {len(nodes)} nodes, {len(relations)} relations")
    return schema


network_schema = build_network_schema(SCHEMA_SOURCE_PATH)


if __name__ == "__main__":
    for side in Source:
        print(f"{side.value}:")
        for path in network_schema.meta_paths(side):
            classes = "+".join(c.value for c in path.object_classes) or "-"
            print(f"  {path.id}: {path.kind.value} via {classes}")
