from __future__ import annotations

from fractions import Fraction

import pytest

from core.errors import (
    EmptySystem,
    GenerationError,
    NoDefaultSelection,
    NonPositiveInput,
    NotATree,
    UnknownFixture,
)
from core.ops import is_tree_set
from generators.families import FAMILIES, check_embedding, example_b, example_b_relation, family, interval_points
from generators.ops import (
    all_trees,
    chain_tree_set,
    dual_name,
    edge_sides,
    edge_tree_set,
    path_edges,
    random_separation_system,
    random_tree_edges,
    random_tree_set,
    star_edges,
)
from generators.registry import (
    fixture_names,
    fixture_selection,
    is_family,
    load_fixtures,
    named_fixture,
    resolve_fixture,
)


def test_edge_sides_of_path() -> None:
    sides = edge_sides(path_edges(3))
    assert sides["(1,2)"] == {1}
    assert sides["(2,1)"] == {2, 3}


def test_edge_tree_set_size_and_certificate() -> None:
    tree = edge_tree_set([(1, 2), (2, 3), (2, 4)], name="fork")
    assert len(tree) == 6
    assert tree.certificate.ok and tree.regular
    assert tree.name == "fork"


def test_edge_tree_set_rejects_non_trees() -> None:
    with pytest.raises(NotATree):
        edge_tree_set([(1, 2), (2, 3), (3, 1)])
    with pytest.raises(NotATree):
        edge_tree_set([(1, 2), (3, 4)])
    with pytest.raises(NotATree):
        edge_tree_set([(1, 1)])
    with pytest.raises(EmptySystem):
        edge_tree_set([])


def test_chain_tree_set() -> None:
    chain = chain_tree_set([1, 2, Fraction(3, 2)])
    assert chain.elements == ("-1", "-2", "-3/2", "1", "2", "3/2")
    assert chain.le("1", "3/2") and chain.le("-2", "-3/2")
    assert not chain.le("1", "-1")
    with pytest.raises(NonPositiveInput):
        chain_tree_set([0, 1])


def test_random_and_enumerated_trees() -> None:
    edges = random_tree_edges(7, seed=3)
    assert len(edges) == 6
    assert edges == random_tree_edges(7, seed=3)
    assert random_tree_edges(1) == []
    assert [len(all_trees(n)) for n in range(2, 8)] == [1, 1, 2, 3, 6, 11]
    with pytest.raises(NonPositiveInput):
        random_tree_edges(0)


def test_star_edges() -> None:
    assert star_edges(3) == [(0, 1), (0, 2), (0, 3)]


def test_dual_name_toggles_star() -> None:
    assert dual_name("s1") == "s1*"
    assert dual_name("s1*") == "s1"


def test_random_separation_system_grows_with_density() -> None:
    for seed in range(20):
        sparse = random_separation_system(4, seed, density=0.2)
        dense = random_separation_system(4, seed, density=0.7)
        assert sparse.elements == dense.elements
        assert len(sparse) == 8 and not sparse.degenerate_elements
        assert sparse.le_pairs <= dense.le_pairs
    assert random_separation_system(3, 5).le_pairs == random_separation_system(3, 5).le_pairs
    with pytest.raises(NonPositiveInput):
        random_separation_system(0)


def test_random_tree_sets_are_tree_sets() -> None:
    nonregular = 0
    for pairs in range(1, 7):
        for seed in range(10):
            tree = random_tree_set(pairs, seed, small_rate=0.3)
            assert len(tree) == 2 * pairs
            assert is_tree_set(tree).ok
            nonregular += not tree.regular
    assert nonregular > 0
    assert random_tree_set(5, 3).le_pairs == random_tree_set(5, 3).le_pairs
    assert random_tree_set(4, 1, small_rate=0.0).regular
    with pytest.raises(NonPositiveInput):
        random_tree_set(0)


def test_example_b_levels() -> None:
    level = example_b(2)
    assert len(level) == 10
    assert is_tree_set(level).ok
    assert level.le("s1", "s2") and level.le("s2", "m")
    assert ("s1", "t1*") in example_b_relation(1)
    with pytest.raises(NonPositiveInput):
        example_b(0)


def test_example_b_is_a_tree_set_up_to_level_eight() -> None:
    for n in range(1, 9):
        report = is_tree_set(example_b(n))
        assert report.ok, (n, report.summary())
        assert not report.crossing_pairs and not report.trivial_elements
        assert len(example_b(n)) == 4 * n + 2


def test_interval_points_are_nested() -> None:
    assert interval_points(2) == [Fraction(1), Fraction(2), Fraction(3, 2), Fraction(5, 4)]
    assert set(interval_points(2)) <= set(interval_points(3))


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_family_levels_embed(name: str) -> None:
    chosen = family(name)
    for n in chosen.levels(8):
        assert check_embedding(chosen, n)
        assert is_tree_set(chosen.level(n)).ok


def test_family_lookup_errors() -> None:
    with pytest.raises(UnknownFixture):
        family("moebius")
    with pytest.raises(NonPositiveInput):
        family("infinite_star").level(2)


def test_registry_fixtures() -> None:
    names = fixture_names()
    assert {"ex_non_trans", "ex_trivial", "chain123", "small_pair"} <= set(names)
    assert fixture_selection("ex_non_trans") == ("(1,2)", "(3,2)", "(3,4)", "(5,4)")
    assert len(named_fixture("path4")) == 6
    assert len(named_fixture("k15")) == 10
    assert named_fixture("ex_trivial").name == "ex_trivial"
    with pytest.raises(UnknownFixture):
        named_fixture("path0")
    with pytest.raises(NoDefaultSelection) as excinfo:
        fixture_selection("path4")
    assert str(excinfo.value) == "fixture 'path4' has no default selection; pass --selection"
    with pytest.raises(NoDefaultSelection):
        fixture_selection("single_edge")
    with pytest.raises(UnknownFixture):
        fixture_selection("moebius")


def test_resolve_fixture_resolves_families() -> None:
    assert is_family("example_B")
    assert not is_family("path3")
    assert resolve_fixture("ray") is FAMILIES["ray"]
    assert len(resolve_fixture("example_B", 1)) == 6
    assert resolve_fixture("chain123").name == "chain123"


def test_load_fixtures_from_custom_file(tmp_path) -> None:
    path = tmp_path / "fixtures.yaml"
    path.write_text("- name: tiny\n  kind: tree\n  edges: [[1, 2], [2, 3]]\n", encoding="utf-8")
    specs = load_fixtures(path)
    assert len(specs["tiny"].build()) == 4
    bad = tmp_path / "bad.yaml"
    bad.write_text("- name: odd\n  kind: torus\n", encoding="utf-8")
    with pytest.raises(UnknownFixture):
        load_fixtures(bad)["odd"].build()


def test_generation_error_is_sep_sys_error() -> None:
    assert issubclass(GenerationError, ValueError)
