from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any

import yaml

from core.errors import NoDefaultSelection, UnknownFixture
from core.ops import SeparationSystem, build_system
from generators.families import FAMILIES, TruncationFamily, family
from generators.ops import chain_tree_set, edge_tree_set, path_edges, star_edges

logger = logging.getLogger(__name__)

FIXTURES_PATH = Path(__file__).resolve().parent / "fixtures.yaml"

_PATTERNS = (
    (re.compile(r"^path([1-9][0-9]*)$"), lambda n: path_edges(n)),
    (re.compile(r"^k1([1-9][0-9]*)$"), lambda n: star_edges(n)),
)


@dataclass(slots=True)
class FixtureSpec:
    name: str
    kind: str
    description: str = ""
    edges: list[list[Any]] = field(default_factory=list)
    values: list[Any] = field(default_factory=list)
    elements: list[str] = field(default_factory=list)
    involution: list[list[str]] = field(default_factory=list)
    le: list[list[str]] = field(default_factory=list)
    selection: list[str] = field(default_factory=list)

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> "FixtureSpec":
        return cls(**payload)

    def build(self) -> SeparationSystem:
        if self.kind == "tree":
            return edge_tree_set(self.edges, name=self.name)
        if self.kind == "chain":
            return chain_tree_set(self.values, name=self.name)
        if self.kind == "system":
            return build_system(self.elements, self.involution, self.le, name=self.name)
        raise UnknownFixture(f"Fixture {self.name!r} has unknown kind {self.kind!r}")


def load_fixtures(path: str | Path = FIXTURES_PATH) -> dict[str, FixtureSpec]:
    rows = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or []
    return {row["name"]: FixtureSpec.from_dict(row) for row in rows}


@lru_cache(maxsize=1)
def _registry() -> dict[str, FixtureSpec]:
    return load_fixtures()


def fixture_names() -> tuple[str, ...]:
    return tuple(sorted(_registry()))


def _pattern_edges(name: str) -> list[tuple[int, int]] | None:
    for pattern, builder in _PATTERNS:
        match = pattern.match(name)
        if match:
            return builder(int(match.group(1)))
    return None


@lru_cache(maxsize=64)
def named_fixture(name: str) -> SeparationSystem:
    """Registry fixture or a ``path<N>`` / ``k1<N>`` edge tree set."""
    spec = _registry().get(name)
    if spec is not None:
        logger.debug("building fixture %s (%s)", name, spec.kind)
        return spec.build()
    edges = _pattern_edges(name)
    if edges is not None:
        return edge_tree_set(edges, name=name)
    raise UnknownFixture(f"Unknown fixture {name!r}")


def fixture_selection(name: str) -> tuple[str, ...]:
    """Default selection stored with a registry fixture."""
    spec = _registry().get(name)
    if spec is not None and spec.selection:
        return tuple(spec.selection)
    if spec is not None or _pattern_edges(name) is not None or name in FAMILIES:
        raise NoDefaultSelection(name)
    raise UnknownFixture(f"Unknown fixture {name!r}")



def is_family(name: str) -> bool:
    return name in FAMILIES


def resolve_fixture(name: str, n: int | None = None) -> SeparationSystem | TruncationFamily:
    """A graph fixture by name, a truncation family, or one level of a family when ``n`` is given."""
    if name in FAMILIES:
        chosen = family(name)
        return chosen if n is None else chosen.level(n)
    return named_fixture(name)
