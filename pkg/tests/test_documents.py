from __future__ import annotations

import pytest

from core.errors import MissingInverse, SepsysSyntaxError
from core.ops import build_system
from generators.registry import fixture_selection, named_fixture
from inverse.ops import build_index_poset, build_inverse_system, inverse_limit
from quotient.ops import quotient
from sepsys_contracts.documents import (
    load_document,
    parse_document,
    parse_system,
    serialize_document,
    serialize_inverse_system,
    serialize_system,
)

RAW_PAIR = """\
format: sepsys/1
name: pair
elements: [a, "a*", b, "b*"]
involution: [[a, "a*"], [b, "b*"]]
le: [[a, b]]
close_under_involution: true
"""


def test_serialize_parse_serialize_is_stable(path3) -> None:
    text = serialize_system(path3)
    reparsed = parse_system(text)
    assert reparsed.to_dict() == path3.to_dict()
    assert serialize_system(reparsed) == text


def test_tree_shorthand_and_metadata() -> None:
    parsed = parse_document("format: sepsys/1\nname: p3\ntree: [[1, 2], [2, 3]]\nmetadata: {source: test}\n")
    assert parsed.kind == "system"
    assert len(parsed.system) == 4
    assert parsed.metadata == {"source": "test"}
    assert "metadata:" in serialize_document(parsed)


def test_close_under_involution_adds_mirrors() -> None:
    system = parse_system(RAW_PAIR)
    assert system.le("b*", "a*")


def test_yaml_errors_carry_line_and_column() -> None:
    with pytest.raises(SepsysSyntaxError) as excinfo:
        parse_document("format: sepsys/1\nelements: [a, b\n")
    assert excinfo.value.location.startswith("line ")


def test_schema_errors_point_at_the_offending_entry() -> None:
    text = "format: sepsys/1\nelements: [a, b, c]\ninvolution: [[a, b, c]]\n"
    with pytest.raises(SepsysSyntaxError) as excinfo:
        parse_document(text)
    assert excinfo.value.location == "involution/0"


def test_tree_and_elements_are_exclusive() -> None:
    text = "format: sepsys/1\ntree: [[1, 2]]\nelements: [a]\ninvolution: [[a]]\n"
    with pytest.raises(SepsysSyntaxError) as excinfo:
        parse_document(text)
    assert excinfo.value.location == "document"


def test_non_mapping_and_wrong_format_are_rejected() -> None:
    with pytest.raises(SepsysSyntaxError):
        parse_document("- a\n- b\n")
    with pytest.raises(SepsysSyntaxError):
        parse_document("format: sepsys/2\nelements: [a]\ninvolution: [[a]]\n")


def test_core_errors_surface_after_schema() -> None:
    with pytest.raises(MissingInverse):
        parse_document("format: sepsys/1\nelements: [a, b]\ninvolution: [[a]]\n")


def test_inverse_system_document_round_trip(path3) -> None:
    coarse = build_system(["a", "a*"], [("a", "a*")], name="coarse")
    index = build_index_poset(["p", "q"], [("p", "q")])
    table = {"(1,2)": "a", "(2,1)": "a*", "(2,3)": "a", "(3,2)": "a*"}
    system = build_inverse_system(index, {"p": coarse, "q": path3}, {("q", "p"): table}, labels={"name": "two"})
    text = serialize_inverse_system(system)
    parsed = parse_document(text)
    assert parsed.kind == "inverse_system"
    assert len(inverse_limit(parsed.inverse_system).system) == 4
    assert serialize_document(parsed) == text
    with pytest.raises(SepsysSyntaxError) as excinfo:
        parse_system(text)
    assert excinfo.value.location == "kind"


def test_bonding_to_unknown_point_is_rejected() -> None:
    text = """\
format: sepsys/1
kind: inverse_system
index: {points: [p]}
systems:
  p: {elements: [a, "a*"], involution: [[a, "a*"]]}
bonding:
  - {source: q, target: p, table: {a: a}}
"""
    with pytest.raises(SepsysSyntaxError) as excinfo:
        parse_document(text)
    assert excinfo.value.location == "bonding"


def test_reparsed_fixture_keeps_its_quotient(tmp_path) -> None:
    host = named_fixture("ex_non_trans")
    path = tmp_path / "ex_non_trans.yaml"
    path.write_text(serialize_system(host), encoding="utf-8")
    reparsed = load_document(path).system
    q = quotient(reparsed, fixture_selection("ex_non_trans"))
    assert len(q.transitivity_violations) == 1
    assert not q.certified
