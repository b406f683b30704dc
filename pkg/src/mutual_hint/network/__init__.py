"""Star-schema heterogeneous information network definitions."""

from .engine import MetaPath, MetaPathKind, NetworkSchema, network_schema
from .schema import EntityClass, ObjectClass, Source

__all__ = [
    "MetaPath",
    "MetaPathKind",
    "NetworkSchema",
    "network_schema",
    "EntityClass",
    "ObjectClass",
    "Source",
]
