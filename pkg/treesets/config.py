from __future__ import annotations

import logging
import os
from dataclasses import dataclass, fields
from functools import lru_cache
from pathlib import Path
from typing import Any

import yaml

logger = logging.getLogger(__name__)

DEFAULT_LIMITS_PATH = Path(__file__).resolve().parent / "limits.yaml"


def _flag_enabled(name: str, *, default: bool = False) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in {"1", "true", "yes", "on"}


def _env_int(name: str) -> int | None:
    value = os.getenv(name)
    if value is None or not value.strip():
        return None
    try:
        return int(value)
    except ValueError as exc:
        raise ValueError(f"{name} must be an integer, got {value!r}") from exc


def lemma_assertions_enabled() -> bool:
    return _flag_enabled("TREESETS_LEMMA_ASSERTIONS", default=True)


@dataclass(slots=True)
class Limits:
    selection_size_cap: int = 24
    exhaustive_check_max_elements: int = 10
    star_growth_window: int = 3
    family_bound: int = 20
    chain_check_max_elements: int = 16

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> "Limits":
        known = {item.name for item in fields(cls)}
        unknown = sorted(set(payload) - known)
        if unknown:
            raise ValueError(f"Unknown limit keys: {', '.join(unknown)}")
        normalized = {key: int(value) for key, value in payload.items()}
        for key, value in normalized.items():
            if value < 1:
                raise ValueError(f"Limit {key} must be positive, got {value}")
        return cls(**normalized)


def load_limits(path: Path | None = None) -> Limits:
    """Read limits from YAML, then apply environment overrides."""
    if path is None:
        override = os.getenv("TREESETS_LIMITS_PATH")
        path = Path(override) if override else DEFAULT_LIMITS_PATH
    payload: dict[str, Any] = {}
    if path.exists():
        payload = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        if not isinstance(payload, dict):
            raise ValueError(f"Limits file {path} must hold a mapping")
    else:
        logger.warning("limits file %s not found, using defaults", path)
    limits = Limits.from_dict(payload)

    cap = _env_int("TREESETS_SELECTION_CAP")
    if cap is not None:
        limits.selection_size_cap = cap
    bound = _env_int("TREESETS_FAMILY_BOUND")
    if bound is not None:
        limits.family_bound = bound
    return limits


_active_limits: Limits | None = None


@lru_cache(maxsize=1)
def _loaded_limits() -> Limits:
    return load_limits()


def default_limits() -> Limits:
    return _active_limits if _active_limits is not None else _loaded_limits()


def set_limits(limits: Limits | None) -> None:
    """Use ``limits`` for the rest of the process; ``None`` returns to the file and environment."""
    global _active_limits
    _active_limits = limits
    _loaded_limits.cache_clear()
