from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

CONTRACT_VERSION = "v1.0"
CONTRACTS_DIR = Path(__file__).resolve().parent.parent / "contracts" / CONTRACT_VERSION
SEPSYS_FORMAT = "sepsys/1"

Name = str
TreeVertex = int | str


class ContractBaseModel(BaseModel):
    """Base class with common serialization helpers for sepsys documents and reports."""

    model_config = ConfigDict(extra="allow")

    def to_dict(self) -> dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)

    def to_json(self, *, indent: int | None = None) -> str:
        return self.model_dump_json(indent=indent, exclude_none=True)

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> "ContractBaseModel":
        return cls.model_validate(payload)

    @classmethod
    def from_json(cls, payload: str) -> "ContractBaseModel":
        return cls.model_validate_json(payload)


class SystemSection(ContractBaseModel):
    name: str | None = None
    elements: list[Name] | None = None
    involution: list[list[Name]] | None = None
    le: list[list[Name]] | None = None
    close_under_involution: bool | None = None
    tree: list[list[TreeVertex]] | None = None
    metadata: dict[str, Any] | None = None


class SEPSYS_DOCUMENT(SystemSection):
    format: Literal["sepsys/1"]
    kind: Literal["system"] | None = None


class IndexSection(ContractBaseModel):
    points: list[Name] = Field(min_length=1)
    le: list[list[Name]] | None = None


class BondingEntry(ContractBaseModel):
    source: Name
    target: Name
    table: dict[Name, Name]


class INVERSE_SYSTEM_DOCUMENT(ContractBaseModel):
    format: Literal["sepsys/1"]
    kind: Literal["inverse_system"]
    name: str | None = None
    index: IndexSection
    systems: dict[Name, SystemSection]
    bonding: list[BondingEntry] | None = None
    metadata: dict[str, Any] | None = None


class PROPERTY_VERDICT(ContractBaseModel):
    name: Literal["chain_complete", "splittable", "star_finite", "branch_bounded"]
    verdict: Literal["holds", "violated", "unknown_up_to"]
    subject: str | None = None
    bound: int | None = Field(default=None, ge=1)
    witness: Any | None = None
    details: dict[str, Any] | None = None
    limit_annotation: str | None = None


CONTRACT_MODEL_MAP: dict[str, type[ContractBaseModel]] = {
    "SEPSYS_DOCUMENT": SEPSYS_DOCUMENT,
    "INVERSE_SYSTEM_DOCUMENT": INVERSE_SYSTEM_DOCUMENT,
    "PROPERTY_VERDICT": PROPERTY_VERDICT,
}


def schema_path(contract_name: str) -> Path:
    return CONTRACTS_DIR / f"{contract_name}.schema.json"


def load_schema(contract_name: str) -> dict[str, Any]:
    path = schema_path(contract_name)
    return json.loads(path.read_text(encoding="utf-8"))


def serialize_contract(contract: ContractBaseModel) -> str:
    return contract.to_json()


def deserialize_contract(contract_name: str, payload: str | dict[str, Any]) -> ContractBaseModel:
    model_cls = CONTRACT_MODEL_MAP[contract_name]
    if isinstance(payload, str):
        return model_cls.from_json(payload)
    return model_cls.from_dict(payload)
