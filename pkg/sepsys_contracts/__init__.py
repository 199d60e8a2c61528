from .models import (
    CONTRACT_MODEL_MAP,
    INVERSE_SYSTEM_DOCUMENT,
    PROPERTY_VERDICT,
    SEPSYS_DOCUMENT,
    SEPSYS_FORMAT,
    BondingEntry,
    IndexSection,
    SystemSection,
    deserialize_contract,
    load_schema,
    schema_path,
    serialize_contract,
)

__all__ = [
    "SEPSYS_FORMAT",
    "SEPSYS_DOCUMENT",
    "INVERSE_SYSTEM_DOCUMENT",
    "PROPERTY_VERDICT",
    "SystemSection",
    "IndexSection",
    "BondingEntry",
    "CONTRACT_MODEL_MAP",
    "schema_path",
    "load_schema",
    "serialize_contract",
    "deserialize_contract",
]
