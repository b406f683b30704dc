from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Tuple

import yaml


class Source(str, Enum):
    """Document type of a collection: Type1 is short/tweet-like, Type2 long/news-like."""

    TYPE1 = "tweet"
    TYPE2 = "news"


class EntityClass(str, Enum):
    PERSON = "P"
    ORGANIZATION = "O"
    LOCATION = "L"


class ObjectClass(str, Enum):
    WORD = "Word"
    ENTITY_P = "Person"
    ENTITY_O = "Organization"
    ENTITY_L = "Location"
    MENTION = "Mention"
    HASHTAG = "Hashtag"
    HYPERLINK = "Hyperlink"


ENTITY_OBJECT_CLASSES: Dict[EntityClass, ObjectClass] = {
    EntityClass.PERSON: ObjectClass.ENTITY_P,
    EntityClass.ORGANIZATION: ObjectClass.ENTITY_O,
    EntityClass.LOCATION: ObjectClass.ENTITY_L,
}

# Node names of the document types in the schema files.
SOURCE_NODES: Dict[Source, str] = {Source.TYPE1: "Tweet", Source.TYPE2: "News"}


def _extract_nodes_from_payload(payload: Dict[str, Any], source: str) -> Dict[str, Any]:
    """Normalize the two schema payload shapes into a node dictionary."""

    if not payload:
        return {}

    if "entities" in payload:
        nodes = payload.get("entities") or {}
        if not isinstance(nodes, dict):
            raise ValueError(f"'entities' section in {source} must be a mapping")
        return nodes

    if "name" in payload:
        node_name = payload["name"]
        if not node_name:
            raise ValueError(f"Node definition in {source} must include a non-empty name")
        cfg = {k: v for k, v in payload.items() if k != "name"}
        return {node_name: cfg}

    raise ValueError(
        f"Unable to extract node definition from {source}. "
        "Provide either an 'entities' mapping or a single node document."
    )


RelationKey = Tuple[str, str, str]  # (from, relation_name, to)


@dataclass
class RelationshipSpec:
    target: str
    description: str = ""


@dataclass
class MetaPathSpec:
    id: str
    kind: str
    via: List[str] = field(default_factory=list)
    description: str = ""


@dataclass
class NodeSchema:
    name: str
    description: str = ""
    attributes: List[str] = field(default_factory=list)
    relationships: Dict[str, RelationshipSpec] = field(default_factory=dict)
    meta_paths: List[MetaPathSpec] = field(default_factory=list)


@dataclass
class RelationSchema:
    name: str
    from_node: str
    to_node: str
    description: str = ""

    @property
    def key(self) -> RelationKey:
        return (self.from_node, self.name, self.to_node)


def _parse_meta_paths(node_name: str, raw: Any) -> List[MetaPathSpec]:
    specs: List[MetaPathSpec] = []
    for item in raw or []:
        if not isinstance(item, dict) or not item.get("id") or not item.get("kind"):
            raise ValueError(f"Meta-path under '{node_name}' needs both 'id' and 'kind'")
        specs.append(
            MetaPathSpec(
                id=item["id"],
                kind=item["kind"],
                via=list(item.get("via", []) or []),
                description=item.get("description", "") or "",
            )
        )
    return specs


def load_schema(
    path: str | Path,
) -> Tuple[Dict[str, NodeSchema], Dict[RelationKey, RelationSchema]]:
    """Load a star-schema HIN definition from a YAML file or a directory of them."""
    path = Path(path)

    nodes_payload: Dict[str, Any] = {}
    if path.is_dir():
        yaml_files = sorted(
            p for p in path.iterdir() if p.is_file() and p.suffix.lower() in {".yaml", ".yml"}
        )
        if not yaml_files:
            raise ValueError(f"schema directory '{path}' does not contain any YAML files")
    else:
        yaml_files = [path]

    for yaml_path in yaml_files:
        raw = yaml.safe_load(yaml_path.read_text(encoding="utf-8")) or {}
        for node_name, cfg in _extract_nodes_from_payload(raw, str(yaml_path)).items():
            if node_name in nodes_payload:
                raise ValueError(f"Duplicate node '{node_name}' found while loading {yaml_path}")
            nodes_payload[node_name] = cfg or {}

    if not nodes_payload:
        raise ValueError("schema definition must include at least one node")

    nodes: Dict[str, NodeSchema] = {}
    relations: Dict[RelationKey, RelationSchema] = {}

    for node_name, cfg in nodes_payload.items():
        rel_specs: Dict[str, RelationshipSpec] = {}
        for rel_name, rel_cfg in (cfg.get("relationships", {}) or {}).items():
            if isinstance(rel_cfg, dict):
                target = rel_cfg.get("target")
                rel_description = rel_cfg.get("description", "") or ""
            else:
                target, rel_description = rel_cfg, ""

            if not target:
                raise ValueError(
                    f"Relationship '{rel_name}' under node '{node_name}' is missing a target"
                )

            rel_specs[rel_name] = RelationshipSpec(target=target, description=rel_description)
            rel = RelationSchema(
                name=rel_name,
                from_node=node_name,
                to_node=target,
                description=rel_description,
            )
            relations[rel.key] = rel

        nodes[node_name] = NodeSchema(
            name=node_name,
            description=cfg.get("description", "") or "",
            attributes=list(cfg.get("attributes", {}) or []),
            relationships=rel_specs,
            meta_paths=_parse_meta_paths(node_name, cfg.get("meta_paths")),
        )

    for (source, rel_name, target) in relations:
        if target not in nodes:
            raise ValueError(
                f"Relationship '{source}.{rel_name}' targets unknown node '{target}'"
            )

    return nodes, relations


__all__ = [
    "Source",
    "EntityClass",
    "ObjectClass",
    "ENTITY_OBJECT_CLASSES",
    "SOURCE_NODES",
    "RelationKey",
    "RelationshipSpec",
    "MetaPathSpec",
    "NodeSchema",
    "RelationSchema",
    "load_schema",
]
