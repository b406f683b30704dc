# hin/registry.py

from typing import Any, Callable, Dict

from mutual_hint.network.engine import MetaPathKind

COUNT_BUILDERS: Dict[MetaPathKind, Callable[..., Any]] = {}
