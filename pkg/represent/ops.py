"""Representation of regular tree sets by bipartitions of a set of orientations.

Each separation ``s`` goes to the bipartition of a ground set of consistent
orientations into those containing the inverse of ``s`` and those containing
``s``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Literal, Mapping

from core.errors import HypothesisFailed, LemmaCounterexample, NotRegular, SepSysError
from core.homomorphism import SystemMap, check_homomorphism
from core.ops import SeparationSystem, TreeSet, as_tree_set, build_system, small_elements
from orientations.ops import Orientation, all_consistent_orientations, is_proper_star, splitting_stars
from treesets.config import lemma_assertions_enabled

logger = logging.getLogger(__name__)

GroundKind = Literal["directed", "greatest", "splitting", "splitting_le2"]
GROUND_KINDS: tuple[str, ...] = ("directed", "greatest", "splitting", "splitting_le2")


def bipartition_name(side: Iterable[Hashable], ground: Iterable[Hashable]) -> str:
    first = sorted(str(x) for x in side)
    second = sorted(str(x) for x in set(ground) - set(side))
    return "{" + ",".join(first) + "}|{" + ",".join(second) + "}"


def bipartition_system(
    ground: Iterable[Hashable],
    sides: Iterable[Iterable[Hashable]] | None = None,
    *,
    name: str = "bipartitions",
) -> SeparationSystem:
    """Oriented bipartitions ``(A, X - A)`` ordered by inclusion of ``A``.

    Without ``sides`` every proper non-empty ``A`` is used; otherwise the
    given sides and their complements.
    """
    points = frozenset(ground)
    if len(points) < 2:
        raise SepSysError("Bipartitions need a ground set with at least two points")
    if sides is None:
        chosen = {
            frozenset(combo)
            for size in range(1, len(points))
            for combo in itertools.combinations(sorted(points, key=str), size)
        }
    else:
        chosen = set()
        for side in sides:
            items = frozenset(side)
            if not items or items == points or not items <= points:
                raise SepSysError(f"Side {sorted(map(str, items))} is not a proper non-empty subset of the ground set")
            chosen |= {items, points - items}
    names = {side: bipartition_name(side, points) for side in chosen}
    involution = sorted({tuple(sorted((names[side], names[points - side]))) for side in chosen})
    le = [(names[a], names[b]) for a in chosen for b in chosen if a != b and a <= b]
    return build_system(sorted(names.values()), involution, le, name=name)


def _require_regular_tree_set(host: SeparationSystem) -> TreeSet:
    tree = as_tree_set(host)
    small = small_elements(tree)
    if small:
        raise NotRegular(small)
    return tree


_KIND_FILTERS = {
    "directed": lambda o: o.directed,
    "greatest": lambda o: o.has_greatest,
    "splitting": lambda o: o.splitting,
    "splitting_le2": lambda o: o.splitting and len(o.maximal) <= 2,
}


def orientation_ground(host: SeparationSystem, kind: str = "splitting") -> dict[str, Orientation]:
    """Consistent orientations of the requested kind, named ``O1``, ``O2``, ... in sorted order."""
    if kind not in _KIND_FILTERS:
        raise SepSysError(f"Unknown ground kind {kind!r}; expected one of {', '.join(GROUND_KINDS)}")
    tree = _require_regular_tree_set(host)
    orientations = [o for o in all_consistent_orientations(tree) if o.consistent]
    named = {f"O{i}": o for i, o in enumerate(orientations, start=1)}
    if kind in ("directed", "greatest") and lemma_assertions_enabled():
        directed = {key for key, o in named.items() if o.directed}
        greatest = {key for key, o in named.items() if o.has_greatest}
        if directed != greatest:
            raise LemmaCounterexample(
                "directed consistent orientations are those with a greatest element",
                {"directed": sorted(directed), "greatest": sorted(greatest)},
            )
    keep = _KIND_FILTERS[kind]
    return {key: o for key, o in named.items() if keep(o)}


def maximal_two_stars(host: SeparationSystem) -> tuple[tuple[str, str], ...]:
    """Proper stars of two elements that no third element extends to a proper star."""
    found = []
    for r, s in itertools.combinations(host.elements, 2):
        if not is_proper_star(host, (r, s)):
            continue
        if any(x not in (r, s) and is_proper_star(host, (r, s, x)) for x in host.elements):
            continue
        found.append((r, s))
    return tuple(found)


@dataclass(frozen=True)
class EverBranchingReport:
    ever_branching: bool
    witness: tuple[str, str] | None = None

    def __bool__(self) -> bool:
        return self.ever_branching


def has_splitting_two_star(host: SeparationSystem) -> bool:
    return any(len(star) == 2 for star in splitting_stars(host))


def is_ever_branching(host: SeparationSystem) -> EverBranchingReport:
    stars = maximal_two_stars(host)
    report = EverBranchingReport(ever_branching=not stars, witness=stars[0] if stars else None)
    if lemma_assertions_enabled() and report.ever_branching == has_splitting_two_star(host):
        raise LemmaCounterexample(
            "ever-branching exactly when there is no splitting two-star",
            {"host": host.name, "maximal_two_stars": [list(s) for s in stars]},
        )
    return report


@dataclass(frozen=True, eq=False)
class Representation:
    host: TreeSet
    kind: str
    ground: Mapping[str, Orientation]
    fibers: Mapping[str, tuple[frozenset[str], frozenset[str]]]
    map: SystemMap
    image: SeparationSystem

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "ground": {key: list(o.key) for key, o in self.ground.items()},
            "fibers": {
                s: {"inverse_side": sorted(back), "side": sorted(front)}
                for s, (back, front) in sorted(self.fibers.items())
            },
            "map": self.map.to_dict(),
            "isomorphism_onto_image": True,
        }


def represent(host: SeparationSystem, kind: str = "splitting") -> Representation:
    """Map each separation to its fiber bipartition and certify an isomorphism onto the image."""
    tree = _require_regular_tree_set(host)
    if kind in ("directed", "greatest"):
        two_stars = [star.names for star in splitting_stars(tree) if len(star) == 2]
        if two_stars:
            raise HypothesisFailed("no splitting two-star", witness=two_stars[0])
    ground = orientation_ground(tree, kind)
    if len(ground) < 2:
        raise HypothesisFailed("ground set with at least two orientations", witness=sorted(ground))

    fibers = {
        s: (
            frozenset(key for key, o in ground.items() if tree.inverse[s] in o.chosen),
            frozenset(key for key, o in ground.items() if s in o.chosen),
        )
        for s in tree.elements
    }
    empty = sorted(s for s, (back, front) in fibers.items() if not back or not front)
    if empty:
        raise LemmaCounterexample("fibers of every separation are non-empty", empty)

    image = bipartition_system(ground, [back for back, _ in fibers.values()], name=f"{tree.name}/{kind}")
    assignment = {s: bipartition_name(back, ground) for s, (back, _) in fibers.items()}
    f = SystemMap(tree, image, assignment)

    if not f.is_injective():
        raise LemmaCounterexample("fiber map is injective", f.to_dict())
    if not check_homomorphism(f).ok:
        raise LemmaCounterexample("fiber map is a homomorphism", f.to_dict())
    reflected = [
        (r, s) for r, s in itertools.product(tree.elements, repeat=2) if image.le(f(r), f(s)) and not tree.le(r, s)
    ]
    if reflected:
        raise LemmaCounterexample("fiber map reflects the order", reflected[:5])
    logger.debug("represented %r over %d %s orientations", tree.name, len(ground), kind)
    return Representation(host=tree, kind=kind, ground=ground, fibers=fibers, map=f, image=image)
