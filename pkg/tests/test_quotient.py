from __future__ import annotations

import pytest

from core.errors import EmptySelection, NotATreeSet, StarMetOnce, UnknownClass, UnknownElement
from quotient.ops import (
    branch_chain,
    branching_points,
    chain_closure,
    class_extrema,
    distinguishes,
    is_branch_closed,
    quotient,
    quotient_classes,
    signature,
    three_star_obstructions,
    validate_selection,
)

NON_TRANS_SELECTION = ["(1,2)", "(3,2)", "(3,4)", "(5,4)"]
TRIVIAL_SELECTION = ["(2,5)", "(6,5)", "(3,7)", "(8,7)"]


def test_validate_selection_rules(path3, trivial_pair) -> None:
    assert validate_selection(path3, ["(1,2)", "(3,2)"]).names == ("(1,2)", "(3,2)")
    with pytest.raises(EmptySelection):
        validate_selection(path3, [])
    with pytest.raises(StarMetOnce) as excinfo:
        validate_selection(path3, ["(1,2)"])
    assert excinfo.value.star == {"(1,2)", "(3,2)"}
    with pytest.raises(UnknownElement):
        validate_selection(path3, ["(9,9)"])
    with pytest.raises(NotATreeSet):
        validate_selection(trivial_pair, ["r"])


def test_signature_of_path_elements(path3) -> None:
    selection = ["(1,2)", "(3,2)"]
    sig = signature(path3, selection, "(2,3)")
    assert sig.d_plus == {"(1,2)"}
    assert sig.d_minus == frozenset()
    assert signature(path3, selection, "(1,2)").d_minus == {"(3,2)"}


def test_non_transitive_quotient_reports_one_violation(ex_non_trans) -> None:
    q = quotient(ex_non_trans, NON_TRANS_SELECTION)
    assert q.class_of["(2,3)"] == q.class_of["(3,4)"] == "[(2,3)]"
    assert q.classes["[(3,2)]"] == {"(3,2)", "(4,3)"}
    assert q.transitivity_violations == (("[(6,3)]", "[(2,3)]", "[(3,6)]"),)
    assert q.le("[(6,3)]", "[(2,3)]")
    assert q.le("[(2,3)]", "[(3,6)]")
    assert not q.le("[(6,3)]", "[(3,6)]")
    assert q.inverse["[(2,3)]"] == "[(3,2)]"
    assert q.three_star_witnesses
    assert not q.certified
    assert q.projection is None


def test_non_transitive_quotient_three_star_witness(ex_non_trans) -> None:
    witnesses = three_star_obstructions(ex_non_trans, NON_TRANS_SELECTION)
    assert witnesses == (("(6,3)", "(2,3)", "(4,3)"),)
    assert quotient(ex_non_trans, NON_TRANS_SELECTION).three_star_witnesses == witnesses



def test_selection_missing_branching_points_is_not_branch_closed(ex_non_trans) -> None:
    closure = is_branch_closed(ex_non_trans, NON_TRANS_SELECTION)
    assert not closure
    assert closure.missing == ("(2,3)", "(4,3)")


def test_trivial_class_in_quotient(ex_trivial) -> None:
    q = quotient(ex_trivial, TRIVIAL_SELECTION)
    assert "[(1,2)]" in q.trivial_classes
    assert not q.certified


def test_distinguishing_element(ex_trivial) -> None:
    assert distinguishes(ex_trivial, TRIVIAL_SELECTION, "(6,5)", "(1,2)", "(2,3)")
    assert not distinguishes(ex_trivial, TRIVIAL_SELECTION, "(2,5)", "(1,2)", "(2,3)")
    sig = signature(ex_trivial, TRIVIAL_SELECTION, "(1,2)")
    assert sig.d_plus == frozenset()
    assert sig.d_minus == {"(6,5)", "(8,7)"}


def test_path_quotient_is_certified(path3) -> None:
    q = quotient(path3, ["(1,2)", "(3,2)"])
    assert q.certified
    assert len(q.classes) == 4
    assert q.projection is not None and q.projection.is_bijective()
    assert q.to_dict()["certified"] is True


def test_branch_closed_selection_gives_tree_set(k13) -> None:
    selection = ["(1,0)", "(2,0)", "(3,0)"]
    assert is_branch_closed(k13, selection)
    q = quotient(k13, selection)
    assert q.certified
    assert not q.transitivity_violations and not q.trivial_classes


def test_quotient_classes_and_extrema(ex_non_trans) -> None:
    classes = quotient_classes(ex_non_trans, NON_TRANS_SELECTION)
    assert classes["[(2,3)]"] == {"(2,3)", "(3,4)"}
    lowest, highest = class_extrema(ex_non_trans, NON_TRANS_SELECTION, "[(2,3)]")
    assert lowest == ("(2,3)",)
    assert highest == ("(3,4)",)
    with pytest.raises(UnknownClass):
        class_extrema(ex_non_trans, NON_TRANS_SELECTION, "[(9,9)]")


def test_branch_chain_between_leaves(ex_non_trans) -> None:
    assert branching_points(ex_non_trans) == {"(2,3)", "(4,3)", "(6,3)"}
    chain = branch_chain(ex_non_trans, "(1,2)", "(5,4)")
    assert chain.forward == ("(2,3)",)
    assert "(2,3)" in chain.points
    assert "(2,3)" in chain_closure(ex_non_trans, ["(1,2)", "(5,4)"])
