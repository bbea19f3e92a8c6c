"""
Application configuration: one `AppConfig` resolved from, in rising priority,
dataclass defaults < JSON config file < environment (after `.env`) < CLI flags.

Keys are flat snake_case names shared by all four layers, e.g.

  {"index_dir": "index", "eta": 0.8, "k2": 10, "llm_base_url": "http://localhost:8000/v1"}
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from dotenv import load_dotenv

from hyperretrieve.clients import EndpointSettings
from hyperretrieve.errors import ConfigError
from hyperretrieve.utils.io import read_json
from retrieval_engine import RetrievalConfig

DEFAULT_INDEX_DIR = Path("index")

# key -> environment variable
ENV_VARS: Dict[str, str] = {
    "offline": "HYPERRETRIEVE_OFFLINE",
    "corpus": "HYPERRETRIEVE_CORPUS",
    "index_dir": "HYPERRETRIEVE_INDEX_DIR",
    "eta": "HYPERRETRIEVE_ETA",
    "beta": "HYPERRETRIEVE_BETA",
    "steps": "HYPERRETRIEVE_STEPS",
    "k1": "HYPERRETRIEVE_K1",
    "k2": "HYPERRETRIEVE_K2",
    "max_workers": "HYPERRETRIEVE_MAX_WORKERS",
    "llm_base_url": "HYPERRETRIEVE_LLM_BASE_URL",
    "llm_api_key": "HYPERRETRIEVE_LLM_API_KEY",
    "llm_model": "HYPERRETRIEVE_LLM_MODEL",
    "embedding_base_url": "HYPERRETRIEVE_EMBEDDING_BASE_URL",
    "embedding_api_key": "HYPERRETRIEVE_EMBEDDING_API_KEY",
    "embedding_model": "HYPERRETRIEVE_EMBEDDING_MODEL",
    "embedding_dim": "HYPERRETRIEVE_EMBEDDING_DIM",
}

# Shared fallbacks for both endpoints.
FALLBACK_ENV_VARS: Dict[str, str] = {
    "llm_base_url": "OPENAI_BASE_URL",
    "embedding_base_url": "OPENAI_BASE_URL",
    "llm_api_key": "OPENAI_API_KEY",
    "embedding_api_key": "OPENAI_API_KEY",
}

_RETRIEVAL_KEYS = {f.name for f in fields(RetrievalConfig)}
_ENDPOINT_KEYS = {
    f"{prefix}_{name}" for prefix in ("llm", "embedding") for name in ("base_url", "api_key", "model")
}
_BOOL_KEYS = {"offline"} | {k for k in _RETRIEVAL_KEYS if k.startswith("use_")}
_INT_KEYS = {"steps", "k1", "k2", "ranking_depth", "max_workers", "embedding_dim", "embedding_batch_size", "max_attempts"}
_FLOAT_KEYS = {"eta", "beta", "timeout_s"}
_PATH_KEYS = {"corpus", "index_dir", "extraction_prompt", "qa_prompt"}


@dataclass(frozen=True)
class AppConfig:
    """Everything a command needs: paths, retrieval hyperparameters, endpoints, bounds."""

    corpus: Optional[Path] = None
    index_dir: Path = DEFAULT_INDEX_DIR
    retrieval: RetrievalConfig = field(default_factory=RetrievalConfig)
    llm: EndpointSettings = field(default_factory=EndpointSettings)
    embedding: EndpointSettings = field(default_factory=EndpointSettings)
    embedding_dim: Optional[int] = None
    embedding_batch_size: int = 64
    offline: bool = False
    max_workers: int = 4
    extraction_prompt: Optional[Path] = None
    qa_prompt: Optional[Path] = None
    timeout_s: float = 60.0
    max_attempts: int = 3

    def validate(self) -> "AppConfig":
        self.retrieval.validate()
        if self.max_workers < 1:
            raise ConfigError("max_workers must be >= 1")
        if self.embedding_batch_size < 1:
            raise ConfigError("embedding_batch_size must be >= 1")
        if self.embedding_dim is not None and self.embedding_dim < 1:
            raise ConfigError("embedding_dim must be >= 1")
        if self.max_attempts < 1:
            raise ConfigError("max_attempts must be >= 1")
        if self.timeout_s <= 0:
            raise ConfigError("timeout_s must be positive")
        return self

    def require_llm(self) -> EndpointSettings:
        if not self.llm.is_configured():
            raise ConfigError(
                "No chat endpoint configured: set HYPERRETRIEVE_LLM_BASE_URL and HYPERRETRIEVE_LLM_MODEL "
                "(or use --offline)."
            )
        return self.llm

    def require_embedding(self) -> EndpointSettings:
        if not self.embedding.is_configured():
            raise ConfigError(
                "No embeddings endpoint configured: set HYPERRETRIEVE_EMBEDDING_BASE_URL and "
                "HYPERRETRIEVE_EMBEDDING_MODEL (or use --offline)."
            )
        if self.embedding_dim is None:
            raise ConfigError("HYPERRETRIEVE_EMBEDDING_DIM is required for a remote encoder.")
        return self.embedding

    def to_dict(self) -> Dict[str, Any]:
        """Echo without secrets."""
        return {
            "corpus": str(self.corpus) if self.corpus else None,
            "index_dir": str(self.index_dir),
            "retrieval": self.retrieval.to_dict(),
            "llm": {"base_url": self.llm.base_url, "model": self.llm.model},
            "embedding": {"base_url": self.embedding.base_url, "model": self.embedding.model},
            "embedding_dim": self.embedding_dim,
            "offline": self.offline,
            "max_workers": self.max_workers,
        }


def _known_keys() -> set:
    plain = {f.name for f in fields(AppConfig)} - {"retrieval", "llm", "embedding"}
    return plain | _RETRIEVAL_KEYS | _ENDPOINT_KEYS


def parse_bool(raw: str) -> bool:
    value = raw.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off", ""):
        return False
    raise ConfigError(f"Not a boolean: {raw!r}")


def coerce(key: str, value: Any) -> Any:
    """Convert a raw layer value (env string, JSON scalar, flag) to the key's type."""
    if value is None:
        return None
    try:
        if key in _BOOL_KEYS:
            return parse_bool(value) if isinstance(value, str) else bool(value)
        if key in _INT_KEYS:
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise ValueError(value)
            return int(value)
        if key in _FLOAT_KEYS:
            return float(value)
        if key in _PATH_KEYS:
            return Path(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Invalid value for {key}: {value!r}") from e
    return str(value)


def values_from_file(path: Path) -> Dict[str, Any]:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Config file not found: {path}")
    try:
        data = read_json(path)
    except ValueError as e:
        raise ConfigError(f"Config file {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must hold a JSON object")
    unknown = sorted(set(data) - _known_keys())
    if unknown:
        raise ConfigError(f"Unknown config keys in {path}: {', '.join(unknown)}")
    return {k: coerce(k, v) for k, v in data.items()}


def values_from_env(env: Mapping[str, str]) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    for key, name in FALLBACK_ENV_VARS.items():
        if env.get(name):
            out[key] = coerce(key, env[name])
    for key, name in ENV_VARS.items():
        if env.get(name, "") != "":
            out[key] = coerce(key, env[name])
    return out


def build_config(values: Mapping[str, Any]) -> AppConfig:
    """Assemble an AppConfig from a flat key -> value mapping (unknown keys rejected)."""
    unknown = sorted(set(values) - _known_keys())
    if unknown:
        raise ConfigError(f"Unknown config keys: {', '.join(unknown)}")
    retrieval = RetrievalConfig(**{k: v for k, v in values.items() if k in _RETRIEVAL_KEYS})
    endpoints = {
        prefix: EndpointSettings(
            base_url=values.get(f"{prefix}_base_url", "") or "",
            api_key=values.get(f"{prefix}_api_key", "") or "",
            model=values.get(f"{prefix}_model", "") or "",
        )
        for prefix in ("llm", "embedding")
    }
    plain = {
        k: v
        for k, v in values.items()
        if k not in _RETRIEVAL_KEYS and k not in _ENDPOINT_KEYS
    }
    return AppConfig(retrieval=retrieval, llm=endpoints["llm"], embedding=endpoints["embedding"], **plain).validate()


def resolve_config(
    flags: Optional[Mapping[str, Any]] = None,
    env: Optional[Mapping[str, str]] = None,
    config_file: Optional[Path] = None,
) -> AppConfig:
    """Merge the layers; flag values of None mean "not given"."""
    values: Dict[str, Any] = {}
    if config_file is not None:
        values.update(values_from_file(config_file))
    if env is not None:
        values.update(values_from_env(env))
    for key, value in (flags or {}).items():
        if value is not None:
            values[key] = coerce(key, value)
    return build_config(values)


def load_environment(dotenv_path: Optional[Path] = None) -> Dict[str, str]:
    """Load `.env` (without overriding the real environment) and return a snapshot."""
    load_dotenv(dotenv_path, override=False)
    return dict(os.environ)
