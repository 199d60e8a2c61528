"""Reading and writing ``sepsys/1`` documents.

Parsing runs in four stages: YAML, JSON Schema, pydantic model, core
validation. Each stage reports failures as :class:`SepsysSyntaxError` or as
the core error it raised, so a caller only needs to catch ``SepSysError``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

import yaml
from jsonschema import Draft7Validator, FormatChecker
from pydantic import ValidationError as ModelValidationError

from core.errors import SepsysSyntaxError
from core.homomorphism import SystemMap
from core.ops import SeparationSystem, build_system
from generators.ops import edge_tree_set
from inverse.ops import InverseSystem, build_index_poset, build_inverse_system
from sepsys_contracts.models import (
    INVERSE_SYSTEM_DOCUMENT,
    SEPSYS_DOCUMENT,
    SEPSYS_FORMAT,
    SystemSection,
    load_schema,
)

logger = logging.getLogger(__name__)

DocumentKind = Literal["system", "inverse_system"]


@dataclass(frozen=True, eq=False)
class ParsedDocument:
    kind: DocumentKind
    system: SeparationSystem | None = None
    inverse_system: InverseSystem | None = None
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def value(self) -> SeparationSystem | InverseSystem:
        return self.system if self.kind == "system" else self.inverse_system


def _load_yaml(text: str) -> Any:
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        location = f"line {mark.line + 1}, column {mark.column + 1}" if mark is not None else None
        problem = getattr(exc, "problem", None) or str(exc)
        raise SepsysSyntaxError(problem, location=location) from exc


def _schema_check(contract_name: str, payload: dict[str, Any]) -> None:
    validator = Draft7Validator(schema=load_schema(contract_name), format_checker=FormatChecker())
    errors = sorted(
        validator.iter_errors(payload),
        key=lambda error: (-len(error.absolute_path), [str(part) for part in error.absolute_path]),
    )
    if errors:
        first = errors[0]
        location = "/".join(str(part) for part in first.absolute_path) or "document"
        raise SepsysSyntaxError(first.message, location=location)


def _model_check(model: type, payload: dict[str, Any]) -> Any:
    try:
        return model.from_dict(payload)
    except ModelValidationError as exc:
        first = exc.errors()[0]
        location = "/".join(str(part) for part in first["loc"]) or "document"
        raise SepsysSyntaxError(first["msg"], location=location) from exc


def system_from_section(section: SystemSection, *, default_name: str = "") -> SeparationSystem:
    name = section.name or default_name
    if section.tree is not None:
        return edge_tree_set(section.tree, name=name or "tree")
    return build_system(
        section.elements or [],
        section.involution or [],
        section.le or [],
        name=name,
        close_under_involution=bool(section.close_under_involution),
    )


def parse_document(text: str) -> ParsedDocument:
    payload = _load_yaml(text)
    if not isinstance(payload, dict):
        raise SepsysSyntaxError("Document must be a mapping", location="document")
    if payload.get("kind") == "inverse_system":
        _schema_check("INVERSE_SYSTEM_DOCUMENT", payload)
        document = _model_check(INVERSE_SYSTEM_DOCUMENT, payload)
        systems = {
            point: system_from_section(section, default_name=point)
            for point, section in sorted(document.systems.items())
        }
        index = build_index_poset(document.index.points, document.index.le or [])
        bonding = {
            (entry.source, entry.target): SystemMap(systems[entry.source], systems[entry.target], dict(entry.table))
            for entry in document.bonding or []
            if entry.source in systems and entry.target in systems
        }
        unknown = [
            point
            for entry in document.bonding or []
            for point in (entry.source, entry.target)
            if point not in systems
        ]
        if unknown:
            raise SepsysSyntaxError(f"Bonding names unknown index point {unknown[0]!r}", location="bonding")
        inverse = build_inverse_system(index, systems, bonding, labels={"name": document.name or ""})
        logger.debug("parsed inverse system over %d points", len(index.points))
        return ParsedDocument(kind="inverse_system", inverse_system=inverse, metadata=dict(document.metadata or {}))

    _schema_check("SEPSYS_DOCUMENT", payload)
    document = _model_check(SEPSYS_DOCUMENT, payload)
    system = system_from_section(document)
    logger.debug("parsed system %r with %d elements", system.name, len(system))
    return ParsedDocument(kind="system", system=system, metadata=dict(document.metadata or {}))


def load_document(path: str | Path) -> ParsedDocument:
    return parse_document(Path(path).read_text(encoding="utf-8"))


def parse_system(text: str) -> SeparationSystem:
    parsed = parse_document(text)
    if parsed.system is None:
        raise SepsysSyntaxError("Expected a system document, got an inverse system", location="kind")
    return parsed.system


def _system_payload(system: SeparationSystem) -> dict[str, Any]:
    raw = system.to_dict()
    return {
        "name": raw["name"],
        "elements": sorted(raw["elements"]),
        "involution": sorted(raw["involution"]),
        "le": sorted(raw["le"]),
    }


def _dump(payload: dict[str, Any]) -> str:
    return yaml.safe_dump(payload, sort_keys=False, default_flow_style=None, allow_unicode=True, width=100)


def serialize_system(system: SeparationSystem, *, metadata: dict[str, Any] | None = None) -> str:
    """Normalized document: sorted lists, sorted involution pairs, non-reflexive closure for ``le``."""
    payload: dict[str, Any] = {"format": SEPSYS_FORMAT, **_system_payload(system)}
    if metadata:
        payload["metadata"] = dict(sorted(metadata.items()))
    return _dump(payload)


def serialize_inverse_system(system: InverseSystem, *, metadata: dict[str, Any] | None = None) -> str:
    raw = system.to_dict()
    payload: dict[str, Any] = {
        "format": SEPSYS_FORMAT,
        "kind": "inverse_system",
        "name": str(system.labels.get("name", "")),
        "index": raw["index"],
        "systems": {point: _system_payload(system.systems[point]) for point in system.index.points},
        "bonding": [
            {"source": entry["source"], "target": entry["target"], "table": dict(sorted(entry["table"].items()))}
            for entry in raw["bonding"]
        ],
    }
    if metadata:
        payload["metadata"] = dict(sorted(metadata.items()))
    return _dump(payload)


def serialize_document(parsed: ParsedDocument) -> str:
    if parsed.kind == "inverse_system":
        return serialize_inverse_system(parsed.inverse_system, metadata=parsed.metadata)
    return serialize_system(parsed.system, metadata=parsed.metadata)
