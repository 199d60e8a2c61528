from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Iterable, Iterator

from core.errors import (
    CotrivialInPartial,
    InconsistentPartial,
    LemmaCounterexample,
    NotAStar,
    NotNested,
    SepSysError,
    TrivialDesignatedMax,
    WrongSize,
)
from core.ops import (
    SeparationSystem,
    down_closure,
    is_cotrivial,
    is_nested,
    is_trivial,
    maximal_elements,
)
from treesets.config import default_limits, lemma_assertions_enabled

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Orientation:
    chosen: frozenset[str]
    maximal: tuple[str, ...]
    consistent: bool
    splitting: bool
    directed: bool
    has_greatest: bool

    @property
    def key(self) -> tuple[str, ...]:
        return tuple(sorted(self.chosen))

    def to_dict(self) -> dict[str, Any]:
        return {
            "chosen": list(self.key),
            "maximal": list(self.maximal),
            "consistent": self.consistent,
            "splitting": self.splitting,
            "directed": self.directed,
            "has_greatest": self.has_greatest,
        }


@dataclass(frozen=True)
class Star:
    members: frozenset[str]
    proper: bool
    splitting: bool

    @property
    def branching(self) -> bool:
        return self.splitting and len(self.members) >= 3

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def to_dict(self) -> dict[str, Any]:
        return {
            "members": list(self.names),
            "proper": self.proper,
            "splitting": self.splitting,
            "branching": self.branching,
        }


def _conflict(system: SeparationSystem, a: str, b: str) -> bool:
    """True when ``a`` and ``b`` point away from each other."""
    if system.same_separation(a, b):
        return False
    return system.le(system.inverse[a], b) or system.le(system.inverse[b], a)


def is_consistent(system: SeparationSystem, chosen: Iterable[str]) -> bool:
    members = sorted(set(chosen))
    return not any(_conflict(system, a, b) for a, b in itertools.combinations(members, 2))


def make_orientation(system: SeparationSystem, chosen: Iterable[str]) -> Orientation:
    members = frozenset(chosen)
    system.require(*members)
    covered = [system.separation_of(x) for x in members]
    if len(set(covered)) != len(covered) or len(covered) != len(system.separations):
        raise SepSysError("An orientation picks exactly one orientation of every separation")
    maximal = maximal_elements(system, members)
    directed = all(
        system.up[a] & system.up[b] & members for a, b in itertools.combinations(sorted(members), 2)
    )
    has_greatest = len(maximal) == 1 and members <= system.down[maximal[0]]
    return Orientation(
        chosen=members,
        maximal=maximal,
        consistent=is_consistent(system, members),
        splitting=members <= down_closure(system, maximal),
        directed=directed,
        has_greatest=has_greatest,
    )


def _iter_consistent(
    system: SeparationSystem,
    fixed: Iterable[str] = (),
    keep_maximal: str | None = None,
) -> Iterator[frozenset[str]]:
    """Backtracking over separations in sorted order, pruning on every conflict."""
    pinned = {system.separation_of(x): x for x in fixed}
    seps = system.separations
    chosen: list[str] = []

    def options(sep: tuple[str, ...]) -> tuple[str, ...]:
        return (pinned[sep],) if sep in pinned else sep

    def admissible(option: str) -> bool:
        if keep_maximal is not None and option != keep_maximal and system.le(keep_maximal, option):
            return False
        return not any(_conflict(system, option, other) for other in chosen)

    def walk(index: int) -> Iterator[frozenset[str]]:
        if index == len(seps):
            yield frozenset(chosen)
            return
        for option in options(seps[index]):
            if admissible(option):
                chosen.append(option)
                yield from walk(index + 1)
                chosen.pop()

    yield from walk(0)


def all_consistent_orientations(system: SeparationSystem) -> list[Orientation]:
    found = sorted(_iter_consistent(system), key=lambda members: tuple(sorted(members)))
    logger.debug("%d consistent orientations of %r", len(found), system.name)
    return [make_orientation(system, members) for members in found]


def extend_orientation(
    system: SeparationSystem,
    partial: Iterable[str],
    designated: str | None = None,
) -> Orientation:
    """Extend a consistent partial orientation, optionally keeping ``designated`` maximal."""
    members = frozenset(partial)
    system.require(*members)
    seps = [system.separation_of(x) for x in members]
    if len(set(seps)) != len(seps):
        raise InconsistentPartial("Partial orientation contains both orientations of a separation")
    if not is_consistent(system, members):
        raise InconsistentPartial(f"Partial orientation {sorted(members)} is not consistent")
    for element in sorted(members):
        if is_cotrivial(system, element):
            raise CotrivialInPartial(element)
    if designated is not None:
        if designated not in members:
            raise SepSysError(f"Designated element {designated!r} is not in the partial orientation")
        if designated not in maximal_elements(system, members):
            raise SepSysError(f"Designated element {designated!r} is not maximal in the partial orientation")
        if is_trivial(system, designated):
            raise TrivialDesignatedMax(designated)

    candidates = _iter_consistent(system, members, keep_maximal=designated)
    first = next(candidates, None)
    if first is None:
        raise LemmaCounterexample("extension of consistent partial orientations", sorted(members))

    limits = default_limits()
    if (
        designated is not None
        and lemma_assertions_enabled()
        and len(system) <= limits.exhaustive_check_max_elements
        and is_nested(system)
    ):
        second = next(candidates, None)
        if second is not None:
            raise LemmaCounterexample(
                "uniqueness of the extension with designated maximum",
                (sorted(first), sorted(second)),
            )
    return make_orientation(system, first)


def is_star(system: SeparationSystem, members: Iterable[str]) -> bool:
    items = sorted(set(members))
    system.require(*items)
    return all(
        system.le(r, system.inverse[s]) and system.le(s, system.inverse[r])
        for r, s in itertools.combinations(items, 2)
    )


def is_proper_star(system: SeparationSystem, members: Iterable[str]) -> bool:
    items = sorted(set(members))
    if not is_star(system, items):
        return False
    if any(system.inverse[x] == x for x in items):
        return False
    return not any(
        system.same_separation(r, s) or system.le(r, s) or system.le(s, r)
        for r, s in itertools.combinations(items, 2)
    )


def make_star(system: SeparationSystem, members: Iterable[str], *, splitting: bool) -> Star:
    items = frozenset(members)
    return Star(members=items, proper=is_proper_star(system, items), splitting=splitting)


def splits_at(system: SeparationSystem, orientation: Orientation) -> Star | None:
    if not orientation.splitting:
        return None
    return make_star(system, orientation.maximal, splitting=True)


def splitting_stars(system: SeparationSystem) -> list[Star]:
    """Maximal-element sets of the splitting consistent orientations, sorted by member names."""
    nested = is_nested(system)
    if not nested:
        raise NotNested(nested.crossing)
    if system.degenerate_elements:
        return [make_star(system, system.degenerate_elements[:1], splitting=True)]
    stars = {
        frozenset(orientation.maximal)
        for orientation in all_consistent_orientations(system)
        if orientation.consistent and orientation.splitting
    }
    return [make_star(system, members, splitting=True) for members in sorted(stars, key=sorted)]


def branching_stars(system: SeparationSystem) -> list[Star]:
    return [star for star in splitting_stars(system) if star.branching]


def orientation_from_star(system: SeparationSystem, star: Star) -> Orientation:
    """Down-closure of the star without the inverses of its members.

    A co-small member m has m* below it; m* is never part of the orientation.
    """
    excluded = {system.inverse[m] for m in star.members if system.inverse[m] != m}
    return make_orientation(system, down_closure(system, star.members) - excluded)


def lies_below_distinct(system: SeparationSystem, lower: Iterable[str], upper: Iterable[str]) -> bool:
    """Each element of ``lower`` lies below its own element of ``upper``."""
    items = sorted(lower)
    return any(
        all(system.le(x, y) for x, y in zip(items, image))
        for image in itertools.permutations(sorted(upper), len(items))
    )


def _supremum_between(system: SeparationSystem, r: str, bounds: Iterable[str]) -> str:
    """Greatest element above ``r`` and below the inverses of ``bounds``."""
    caps = [system.inverse[b] for b in bounds]
    between = [x for x in system.up[r] if all(system.le(x, c) for c in caps)]
    top = maximal_elements(system, between)
    if len(top) != 1:
        raise LemmaCounterexample("chain of separations between a star element and the others", top)
    return top[0]


def find_branching_star(system: SeparationSystem, three_star: Iterable[str]) -> Star:
    members = frozenset(three_star)
    system.require(*members)
    if len(members) != 3:
        raise WrongSize(f"Expected a star of exactly 3 elements, got {len(members)}")
    if not is_star(system, members):
        raise NotAStar(members)

    candidates = [
        star for star in branching_stars(system) if lies_below_distinct(system, members, star.members)
    ]
    if len(candidates) != 1:
        raise LemmaCounterexample(
            "unique branching star above a three-star",
            {"three_star": sorted(members), "candidates": [star.names for star in candidates]},
        )
    found = candidates[0]
    if lemma_assertions_enabled():
        items = sorted(members)
        suprema = {
            _supremum_between(system, x, [y for y in items if y != x]) for x in items
        }
        if not suprema <= found.members:
            raise LemmaCounterexample(
                "branching star through the chain suprema",
                {"suprema": sorted(suprema), "star": found.names},
            )
    return found
