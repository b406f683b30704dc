"""Run configuration: pydantic models plus file / environment / flag layering."""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError as PydanticValidationError
from pydantic import field_validator, model_validator

from mutual_hint.errors import ConfigError, ParseError

logger = logging.getLogger(__name__)

ENV_PREFIX = "MUTUAL_HINT_"


class SearchParams(BaseModel):
    """Curvilinear search constants."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    rho1: float = Field(1e-4, description="Armijo constant of the non-monotone condition.")
    eta: float = Field(0.85, description="Averaging weight of the reference value C_k.")
    tau0: float = Field(1e-3, gt=0, description="Initial step size.")
    tau_min: float = Field(1e-10, gt=0, description="Lower clamp of BB steps.")
    tau_max: float = Field(1e3, gt=0, description="Upper clamp of BB steps.")
    max_inner: int = Field(500, ge=0, description="Iterations per single-variable solve.")
    max_backtrack: int = Field(40, ge=0, description="Step halvings before a solve stalls.")
    tol_grad: float = Field(1e-6, gt=0, description="Projected-gradient norm stop.")
    tol_obj: float = Field(1e-8, ge=0, description="Relative objective change stop.")
    max_outer: int = Field(50, ge=1, description="Alternation rounds.")

    @model_validator(mode="after")
    def _check_ranges(self) -> "SearchParams":
        if not 0 < self.rho1 < 1:
            raise ValueError(f"rho1 must lie in (0, 1), got {self.rho1}")
        if not 0 < self.eta < 1:
            raise ValueError(f"eta must lie in (0, 1), got {self.eta}")
        if self.tau_min >= self.tau_max:
            raise ValueError(f"tau_min ({self.tau_min}) must be below tau_max ({self.tau_max})")
        return self


class SynthConfig(BaseModel):
    """Planted-partition comparative corpus."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    k: int = Field(4, ge=1, description="Planted cluster count.")
    n1: int = Field(200, ge=1, description="Tweet count.")
    n2: int = Field(200, ge=1, description="News count.")
    vocab_per_cluster: int = Field(40, ge=1)
    shared_vocab: int = Field(100, ge=0, description="Background words shared by all clusters.")
    p_in: float = Field(0.3, ge=0, le=1, description="Draw weight of a word of the own cluster.")
    p_out: float = Field(0.02, ge=0, le=1, description="Draw weight of any other word.")
    words_per_doc1: int = Field(12, ge=1)
    words_per_doc2: int = Field(80, ge=1)
    anchor_rate: float = Field(0.5, description="Fraction of tweets linking a news document.")
    entity_fraction: float = Field(0.2, ge=0, le=1)
    noise_rate: float = Field(
        0.0, description="Fraction of anchors sent to the linked news of a random cluster."
    )
    link_pool: int = Field(3, ge=1, description="News documents per cluster that tweets link to.")
    retweet_rate: float = Field(0.0, description="Fraction of tweets retweeting a same-cluster tweet.")
    seed: int = 0

    @model_validator(mode="after")
    def _check_ranges(self) -> "SynthConfig":
        for name in ("anchor_rate", "noise_rate", "retweet_rate"):
            value = getattr(self, name)
            if not 0 <= value <= 1:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if self.p_in <= self.p_out:
            raise ValueError(f"p_in ({self.p_in}) must exceed p_out ({self.p_out})")
        if self.k > min(self.n1, self.n2):
            raise ValueError(f"k={self.k} exceeds min(n1, n2)={min(self.n1, self.n2)}")
        return self


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    t1: Optional[Path] = Field(None, description="Tweet collection (JSON Lines).")
    t2: Optional[Path] = Field(None, description="News collection (JSON Lines).")
    out: Path = Field(Path("run"), description="Output directory.")
    k1: int = Field(4, ge=1)
    k2: int = Field(4, ge=1)
    theta: float = Field(1.0, ge=0, description="Inconsistency penalty weight.")
    alpha: float = Field(1.0, gt=0, description="Weight of the tweet normalized cut.")
    beta: float = Field(1.0, gt=0, description="Weight of the news normalized cut.")
    weights1: Optional[List[float]] = Field(None, description="Tweet meta-path weights.")
    weights2: Optional[List[float]] = Field(None, description="News meta-path weights.")
    split_retweet: bool = False
    seed: int = 0
    min_common: int = Field(1, ge=1)
    link_threshold: float = Field(0.8, gt=0, le=1)
    threads: Optional[int] = Field(None, ge=1)
    track: bool = False
    tracking_uri: str = "http://localhost:5001"
    experiment_name: str = "mutual-hint"
    search: SearchParams = Field(default_factory=SearchParams)
    synth: SynthConfig = Field(default_factory=SynthConfig)

    @field_validator("weights1", "weights2")
    @classmethod
    def _weights_sum_to_one(cls, value: Optional[List[float]]) -> Optional[List[float]]:
        if value is None:
            return value
        if any(w < 0 for w in value):
            raise ValueError(f"meta-path weights must be non-negative, got {value}")
        if abs(sum(value) - 1.0) > 1e-12:
            raise ValueError(f"meta-path weights must sum to 1, got {sum(value)!r}")
        return value

    def resolved(self) -> Dict[str, Any]:
        """Fully resolved configuration, keys sorted at every level."""
        return _sort_keys(self.model_dump(mode="json"))


def _sort_keys(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _sort_keys(value[k]) for k in sorted(value)}
    return value


# -------------------------
# Sources
# -------------------------


def _normalize_key(key: str) -> str:
    return key.strip().lower().replace("-", "_")


def read_config_file(path: str | Path) -> Dict[str, Any]:
    """Parse ``key = value`` lines; values are YAML scalars or flow lists."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"config file not found: {path}")

    values: Dict[str, Any] = {}
    for line_number, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ParseError("expected 'key = value'", str(path), line_number)
        try:
            values[_normalize_key(key)] = yaml.safe_load(value.strip()) if value.strip() else None
        except yaml.YAMLError as e:
            raise ParseError(f"unreadable value for '{key.strip()}'", str(path), line_number) from e
    return values


def read_environment(environ: Optional[Mapping[str, str]] = None) -> Dict[str, Any]:
    """MUTUAL_HINT_* variables, after loading a local .env file."""
    if environ is None:
        load_dotenv()
        environ = os.environ
    values: Dict[str, Any] = {}
    for name, raw in environ.items():
        if not name.startswith(ENV_PREFIX):
            continue
        values[_normalize_key(name[len(ENV_PREFIX):])] = yaml.safe_load(raw) if raw else None
    return values


def _route(flat: Mapping[str, Any]) -> Dict[str, Any]:
    """Place flat keys into the nested RunConfig layout."""
    routed: Dict[str, Any] = {"search": {}, "synth": {}}
    for key, value in flat.items():
        if key in SearchParams.model_fields:
            routed["search"][key] = value
        elif key == "seed":
            routed["seed"] = value
            routed["synth"]["seed"] = value
        elif key in SynthConfig.model_fields and key not in RunConfig.model_fields:
            routed["synth"][key] = value
        else:
            routed[key] = value
    return routed


def build_run_config(
    flags: Optional[Mapping[str, Any]] = None,
    config_file: Optional[str | Path] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> RunConfig:
    """Layer defaults < environment < config file < command-line flags."""
    merged: Dict[str, Any] = {}
    merged.update(read_environment(environ))
    if config_file is not None:
        merged.update(read_config_file(config_file))
    merged.update({_normalize_key(k): v for k, v in (flags or {}).items() if v is not None})

    try:
        config = RunConfig.model_validate(_route(merged))
    except PydanticValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "config"
        raise ConfigError(f"{where}: {first['msg']}") from e
    logger.debug(f"Resolved configuration: {config.resolved()}")
    return config
