from __future__ import annotations

import itertools

import pytest

from core.errors import CotrivialInPartial, InconsistentPartial, NotAStar, NotNested, TrivialDesignatedMax, WrongSize
from core.ops import build_system, is_cotrivial, is_nested, is_trivial
from generators.ops import (
    all_trees,
    chain_tree_set,
    edge_tree_set,
    layout_systems,
    random_separation_system,
    random_tree_edges,
    random_tree_set,
)
from orientations.ops import (
    all_consistent_orientations,
    branching_stars,
    extend_orientation,
    find_branching_star,
    is_consistent,
    is_proper_star,
    is_star,
    lies_below_distinct,
    orientation_from_star,
    splitting_stars,
)

K13_CENTRE = frozenset({"(1,0)", "(2,0)", "(3,0)"})


def test_path_orientations_match_nodes(path3) -> None:
    found = all_consistent_orientations(path3)
    assert len(found) == 3
    assert all(o.consistent and o.splitting for o in found)
    assert {o.key for o in found} == {
        ("(2,1)", "(3,2)"),
        ("(1,2)", "(3,2)"),
        ("(1,2)", "(2,3)"),
    }


def test_orientation_count_equals_node_count_on_small_trees() -> None:
    for n in range(2, 8):
        for edges in all_trees(n):
            assert len(all_consistent_orientations(edge_tree_set(edges))) == n


def test_orientation_count_on_random_trees() -> None:
    for seed in range(200):
        n = 2 + seed % 8
        assert len(all_consistent_orientations(edge_tree_set(random_tree_edges(n, seed)))) == n


def test_inconsistent_choice_is_rejected(path3) -> None:
    assert not is_consistent(path3, ["(2,1)", "(2,3)"])
    assert is_consistent(path3, ["(1,2)", "(3,2)"])


def test_path_splitting_stars(path3) -> None:
    stars = splitting_stars(path3)
    assert [star.names for star in stars] == [("(1,2)", "(3,2)"), ("(2,1)",), ("(2,3)",)]
    assert not branching_stars(path3)


def test_star_centre_is_branching(k13) -> None:
    branching = branching_stars(k13)
    assert [star.members for star in branching] == [K13_CENTRE]
    assert branching[0].proper
    assert is_star(k13, K13_CENTRE)
    assert is_proper_star(k13, K13_CENTRE)
    assert not is_star(k13, ["(0,1)", "(2,0)"])


def test_orientation_from_star_recovers_splitting_orientation(k13) -> None:
    for star in splitting_stars(k13):
        orientation = orientation_from_star(k13, star)
        assert orientation.consistent and orientation.splitting
        assert set(orientation.maximal) == star.members


def test_orientation_from_star_with_co_small_member() -> None:
    system = build_system(["a", "a*"], [("a", "a*")], [("a", "a*")], name="small_pair")
    stars = splitting_stars(system)
    assert [star.names for star in stars] == [("a",), ("a*",)]
    assert orientation_from_star(system, stars[1]).key == ("a*",)
    assert orientation_from_star(system, stars[0]).key == ("a",)


def test_extend_orientation_with_designated_maximum(path3) -> None:
    extended = extend_orientation(path3, ["(1,2)"], designated="(1,2)")
    assert extended.key == ("(1,2)", "(3,2)")
    assert extend_orientation(path3, ["(2,3)"]).key == ("(1,2)", "(2,3)")


def test_extend_orientation_rejects_bad_partials(path3, trivial_pair) -> None:
    with pytest.raises(InconsistentPartial):
        extend_orientation(path3, ["(1,2)", "(2,1)"])
    with pytest.raises(InconsistentPartial):
        extend_orientation(path3, ["(2,1)", "(2,3)"])
    with pytest.raises(CotrivialInPartial):
        extend_orientation(trivial_pair, ["r*"])
    with pytest.raises(TrivialDesignatedMax):
        extend_orientation(trivial_pair, ["r"], designated="r")


def test_splitting_stars_require_nested() -> None:
    crossing = build_system(["a", "a*", "b", "b*"], [("a", "a*"), ("b", "b*")])
    with pytest.raises(NotNested):
        splitting_stars(crossing)


def test_find_branching_star_above_three_star(k13) -> None:
    assert find_branching_star(k13, K13_CENTRE).members == K13_CENTRE
    with pytest.raises(WrongSize):
        find_branching_star(k13, ["(1,0)", "(2,0)"])
    with pytest.raises(NotAStar):
        find_branching_star(k13, ["(0,1)", "(0,2)", "(0,3)"])


def test_every_three_star_has_one_branching_star_below_distinct() -> None:
    for n in range(4, 8):
        for edges in all_trees(n):
            tree = edge_tree_set(edges)
            for triple in itertools.combinations(tree.elements, 3):
                if is_star(tree, triple):
                    star = find_branching_star(tree, triple)
                    assert star.branching


def _abstract_tree_sets():
    for pairs in range(1, 7):
        for seed in range(20):
            yield random_tree_set(pairs, seed, small_rate=0.3, name=f"random{pairs}:{seed}")
    for size in range(1, 6):
        yield chain_tree_set(range(1, size + 1), name=f"chain{size}")


def _nested_systems():
    for pairs in (1, 2, 3):
        yield from (system for system in layout_systems(pairs) if is_nested(system))
    for pairs in range(2, 7):
        for seed in range(15):
            system = random_separation_system(pairs, seed, density=0.7, name=f"dense{pairs}:{seed}")
            if is_nested(system):
                yield system
    yield from _abstract_tree_sets()


def test_splitting_subsets_are_proper_stars_of_nontrivial_elements() -> None:
    checked = 0
    for system in _nested_systems():
        for star in splitting_stars(system):
            assert star.proper, (system.name, star.names)
            for element in star.members:
                assert not is_trivial(system, element), (system.name, element)
                assert not is_cotrivial(system, element), (system.name, element)
            checked += 1
    assert checked > 0


def test_degenerate_element_is_the_unique_splitting_subset() -> None:
    system = build_system(["d", "e", "e*"], [("d",), ("e", "e*")], [("d", "e")], close_under_involution=True)
    stars = splitting_stars(system)
    assert [star.names for star in stars] == [("d",)]
    assert not stars[0].proper


def test_two_maximal_elements_force_splitting_on_abstract_tree_sets() -> None:
    nonregular = 0
    for tree in _abstract_tree_sets():
        nonregular += not tree.regular
        orientations = all_consistent_orientations(tree)
        for orientation in orientations:
            if len(orientation.maximal) >= 2:
                assert orientation.splitting, (tree.name, orientation.key)
        splitting = {frozenset(o.maximal): o for o in orientations if o.splitting}
        assert set(splitting) == {star.members for star in splitting_stars(tree)}
        for star in splitting_stars(tree):
            assert orientation_from_star(tree, star).chosen == splitting[star.members].chosen
    assert nonregular > 0


def test_three_stars_of_abstract_tree_sets_have_one_branching_star() -> None:
    stars_checked = 0
    for tree in _abstract_tree_sets():
        for triple in itertools.combinations(tree.elements, 3):
            if is_star(tree, triple):
                star = find_branching_star(tree, triple)
                assert star.branching
                assert lies_below_distinct(tree, triple, star.members)
                stars_checked += 1
    assert stars_checked > 0
