from __future__ import annotations

import pytest

from core.errors import HypothesisFailed, NotATreeSet, NotRegular, SepSysError
from core.homomorphism import check_homomorphism
from core.ops import is_tree_set
from generators.registry import named_fixture
from represent.ops import (
    bipartition_name,
    bipartition_system,
    has_splitting_two_star,
    is_ever_branching,
    maximal_two_stars,
    orientation_ground,
    represent,
)

REGULAR_FIXTURES = ["path3", "path5", "k13", "k14", "ex_non_trans", "ex_trivial", "subdivided_k13", "chain123"]


def test_bipartition_name_orders_sides() -> None:
    assert bipartition_name({"b", "a"}, {"a", "b", "c"}) == "{a,b}|{c}"


def test_full_bipartition_system() -> None:
    system = bipartition_system({"x", "y", "z"})
    assert len(system) == 6
    assert system.le("{x}|{y,z}", "{x,y}|{z}")
    assert system.inverse["{x}|{y,z}"] == "{y,z}|{x}"
    assert is_tree_set(system).trivial_elements == ()


def test_bipartition_system_rejects_improper_sides() -> None:
    with pytest.raises(SepSysError):
        bipartition_system({"x"})
    with pytest.raises(SepSysError):
        bipartition_system({"x", "y"}, [{"x", "y"}])


@pytest.mark.parametrize("name", REGULAR_FIXTURES)
def test_splitting_representation_on_regular_fixtures(name: str) -> None:
    host = named_fixture(name)
    result = represent(host, "splitting")
    assert result.map.is_bijective()
    assert check_homomorphism(result.map).ok
    assert set(result.fibers) == set(host.elements)


@pytest.mark.parametrize("name", REGULAR_FIXTURES)
def test_greatest_ground_needs_no_splitting_two_star(name: str) -> None:
    host = named_fixture(name)
    if has_splitting_two_star(host):
        with pytest.raises(HypothesisFailed) as excinfo:
            represent(host, "greatest")
        assert excinfo.value.which == "no splitting two-star"
    else:
        assert represent(host, "greatest").map.is_bijective()


@pytest.mark.parametrize("name", REGULAR_FIXTURES)
def test_directed_and_greatest_grounds_agree(name: str) -> None:
    host = named_fixture(name)
    assert set(orientation_ground(host, "directed")) == set(orientation_ground(host, "greatest"))


def test_path_fails_greatest_ground(path3) -> None:
    with pytest.raises(HypothesisFailed):
        represent(path3, "greatest")


def test_star_greatest_ground(k13) -> None:
    result = represent(k13, "greatest")
    assert len(result.ground) == 3
    assert all(o.has_greatest for o in result.ground.values())


def test_path_splitting_fibers(path3) -> None:
    result = represent(path3, "splitting")
    assert sorted(result.ground) == ["O1", "O2", "O3"]
    back, front = result.fibers["(1,2)"]
    assert len(back) == 1 and len(front) == 2
    assert result.to_dict()["isomorphism_onto_image"] is True


def test_ever_branching(path3, k13) -> None:
    assert is_ever_branching(k13)
    report = is_ever_branching(path3)
    assert not report
    assert report.witness == ("(1,2)", "(3,2)")
    assert maximal_two_stars(path3) == (("(1,2)", "(3,2)"),)


def test_represent_rejects_non_regular_and_non_tree_sets(trivial_pair) -> None:
    with pytest.raises(NotRegular):
        represent(named_fixture("small_pair"))
    with pytest.raises(NotATreeSet):
        represent(trivial_pair)


def test_unknown_ground_kind(path3) -> None:
    with pytest.raises(SepSysError):
        orientation_ground(path3, "sideways")


def test_two_maximal_splitting_ground(path3, k13) -> None:
    assert len(orientation_ground(path3, "splitting_le2")) == 3
    ground = orientation_ground(k13, "splitting_le2")
    assert len(ground) == 3
    assert represent(k13, "splitting_le2").map.is_bijective()
