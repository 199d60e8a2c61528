from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

import networkx as nx

from core.errors import (
    AntisymmetryViolation,
    InvalidInvolution,
    InvolutionNotOrderReversing,
    MissingInverse,
    NotATreeSet,
    SepSysError,
    UnknownElement,
)

logger = logging.getLogger(__name__)

Separation = tuple[str, ...]


@dataclass(frozen=True, eq=False)
class SeparationSystem:
    """Finite poset of named oriented separations with an order-reversing involution.

    Instances are only built through :func:`build_system`, which validates the
    poset axioms and the involution. ``le_pairs`` is the full reflexive and
    transitive relation.
    """

    name: str
    elements: tuple[str, ...]
    inverse: Mapping[str, str]
    le_pairs: frozenset[tuple[str, str]]

    def __contains__(self, element: object) -> bool:
        return element in self.inverse

    def __len__(self) -> int:
        return len(self.elements)

    def require(self, *elements: str) -> None:
        for element in elements:
            if element not in self.inverse:
                raise UnknownElement(element, where=self.name or "system")

    def inv(self, element: str) -> str:
        self.require(element)
        return self.inverse[element]

    def le(self, x: str, y: str) -> bool:
        return (x, y) in self.le_pairs

    def separation_of(self, element: str) -> Separation:
        """Unoriented separation of ``element`` as the sorted tuple of its orientations."""
        return tuple(sorted({element, self.inv(element)}))

    def same_separation(self, x: str, y: str) -> bool:
        return y == x or y == self.inverse[x]

    def strictly_le(self, x: str, y: str) -> bool:
        return self.le(x, y) and not self.same_separation(x, y)

    @cached_property
    def up(self) -> dict[str, frozenset[str]]:
        above: dict[str, set[str]] = {x: set() for x in self.elements}
        for x, y in self.le_pairs:
            above[x].add(y)
        return {x: frozenset(values) for x, values in above.items()}

    @cached_property
    def down(self) -> dict[str, frozenset[str]]:
        below: dict[str, set[str]] = {x: set() for x in self.elements}
        for x, y in self.le_pairs:
            below[y].add(x)
        return {x: frozenset(values) for x, values in below.items()}

    @cached_property
    def separations(self) -> tuple[Separation, ...]:
        return tuple(sorted({self.separation_of(x) for x in self.elements}))

    @cached_property
    def degenerate_elements(self) -> tuple[str, ...]:
        return tuple(x for x in self.elements if self.inverse[x] == x)

    def to_dict(self) -> dict[str, Any]:
        pairs = sorted({self.separation_of(x) for x in self.elements})
        return {
            "name": self.name,
            "elements": list(self.elements),
            "involution": [list(pair) for pair in pairs],
            "le": [[x, y] for x, y in sorted(self.le_pairs) if x != y],
        }


def build_system(
    elements: Iterable[str],
    involution_pairs: Iterable[Sequence[str]],
    le_generators: Iterable[Sequence[str]] = (),
    *,
    name: str = "",
    close_under_involution: bool = False,
) -> SeparationSystem:
    """Validate raw input and return a system ordered by the closure of ``le_generators``.

    A one-element involution pair ``(d,)`` or ``(d, d)`` marks ``d`` degenerate.
    With ``close_under_involution`` every generator ``x <= y`` also contributes
    ``y* <= x*``.
    """
    names: list[str] = []
    seen: set[str] = set()
    for element in elements:
        if not isinstance(element, str) or not element:
            raise SepSysError(f"Element names must be non-empty strings, got {element!r}")
        if element in seen:
            raise SepSysError(f"Duplicate element {element!r}")
        seen.add(element)
        names.append(element)

    inverse: dict[str, str] = {}
    for pair in involution_pairs:
        pair = tuple(pair)
        if len(pair) == 1:
            pair = (pair[0], pair[0])
        if len(pair) != 2:
            raise SepSysError(f"Involution entries must be pairs, got {list(pair)!r}")
        a, b = pair
        for element in (a, b):
            if element not in seen:
                raise UnknownElement(element, where="involution")
        for x, y in ((a, b), (b, a)):
            if inverse.get(x, y) != y:
                raise InvalidInvolution(x, inverse[x], y)
            inverse[x] = y

    for element in sorted(names):
        if element not in inverse:
            raise MissingInverse(element, location="involution")

    graph = nx.DiGraph()
    graph.add_nodes_from(names)
    for generator in le_generators:
        x, y = tuple(generator)
        for element in (x, y):
            if element not in seen:
                raise UnknownElement(element, where="le")
        graph.add_edge(x, y)
        if close_under_involution:
            graph.add_edge(inverse[y], inverse[x])

    closure = nx.transitive_closure(graph)
    le_pairs = {(x, y) for x, y in closure.edges()} | {(x, x) for x in names}

    for x, y in sorted(le_pairs):
        if x != y and (y, x) in le_pairs:
            raise AntisymmetryViolation(x, y)
    for x, y in sorted(le_pairs):
        if (inverse[y], inverse[x]) not in le_pairs:
            raise InvolutionNotOrderReversing(x, y)

    system = SeparationSystem(
        name=name,
        elements=tuple(sorted(names)),
        inverse=dict(inverse),
        le_pairs=frozenset(le_pairs),
    )
    logger.debug("built system %r with %d elements", name, len(system))
    return system


def is_small(system: SeparationSystem, element: str) -> bool:
    return system.le(element, system.inv(element))


def is_cosmall(system: SeparationSystem, element: str) -> bool:
    return system.le(system.inv(element), element)


def is_degenerate(system: SeparationSystem, element: str) -> bool:
    return system.inv(element) == element


def small_elements(system: SeparationSystem) -> tuple[str, ...]:
    return tuple(x for x in system.elements if is_small(system, x))


def trivial_witness(system: SeparationSystem, element: str) -> Separation | None:
    """Least unoriented ``s`` with ``element`` strictly below both orientations of ``s``."""
    system.require(element)
    candidates = [
        system.separation_of(y)
        for y in system.up[element]
        if not system.same_separation(element, y) and system.inverse[y] in system.up[element]
    ]
    return min(candidates) if candidates else None


def is_trivial(system: SeparationSystem, element: str) -> bool:
    return trivial_witness(system, element) is not None


def is_cotrivial(system: SeparationSystem, element: str) -> bool:
    return is_trivial(system, system.inv(element))


def trivial_elements(system: SeparationSystem) -> tuple[str, ...]:
    return tuple(x for x in system.elements if is_trivial(system, x))


def comparable(system: SeparationSystem, s: Separation, t: Separation) -> bool:
    return any(system.le(a, b) or system.le(b, a) for a in s for b in t)


def crossing_pairs(system: SeparationSystem) -> tuple[tuple[str, str], ...]:
    seps = system.separations
    found = []
    for i, s in enumerate(seps):
        for t in seps[i + 1 :]:
            if not comparable(system, s, t):
                found.append((s[0], t[0]))
    return tuple(found)


@dataclass(frozen=True)
class NestedReport:
    nested: bool
    crossing: tuple[str, str] | None = None

    def __bool__(self) -> bool:
        return self.nested


def is_nested(system: SeparationSystem) -> NestedReport:
    seps = system.separations
    for i, s in enumerate(seps):
        for t in seps[i + 1 :]:
            if not comparable(system, s, t):
                return NestedReport(nested=False, crossing=(s[0], t[0]))
    return NestedReport(nested=True)


def is_regular(system: SeparationSystem) -> bool:
    return not small_elements(system)


@dataclass(frozen=True)
class TreeSetReport:
    crossing_pairs: tuple[tuple[str, str], ...] = ()
    trivial_elements: tuple[str, ...] = ()
    degenerate_elements: tuple[str, ...] = ()
    regular: bool = True

    @property
    def ok(self) -> bool:
        return not (self.crossing_pairs or self.trivial_elements or self.degenerate_elements)

    @property
    def nested(self) -> bool:
        return not self.crossing_pairs

    def summary(self) -> str:
        if self.ok:
            return "tree set" + (" (regular)" if self.regular else "")
        parts = []
        if self.crossing_pairs:
            parts.append("crossing: " + ", ".join(f"{a} x {b}" for a, b in self.crossing_pairs))
        if self.trivial_elements:
            parts.append("trivial: " + ", ".join(self.trivial_elements))
        if self.degenerate_elements:
            parts.append("degenerate: " + ", ".join(self.degenerate_elements))
        return "; ".join(parts)

    def to_dict(self) -> dict[str, Any]:
        return {
            "tree_set": self.ok,
            "regular": self.regular,
            "crossing_pairs": [list(pair) for pair in self.crossing_pairs],
            "trivial_elements": list(self.trivial_elements),
            "degenerate_elements": list(self.degenerate_elements),
        }


@dataclass(frozen=True, eq=False)
class TreeSet(SeparationSystem):
    """A system certified nested, with no trivial and no degenerate elements."""

    certificate: TreeSetReport = field(default_factory=TreeSetReport)

    @property
    def regular(self) -> bool:
        return self.certificate.regular


def is_tree_set(system: SeparationSystem) -> TreeSetReport:
    return TreeSetReport(
        crossing_pairs=crossing_pairs(system),
        trivial_elements=trivial_elements(system),
        degenerate_elements=system.degenerate_elements,
        regular=is_regular(system),
    )


def as_tree_set(system: SeparationSystem) -> TreeSet:
    if isinstance(system, TreeSet):
        return system
    report = is_tree_set(system)
    if not report.ok:
        raise NotATreeSet(report)
    return TreeSet(
        name=system.name,
        elements=system.elements,
        inverse=system.inverse,
        le_pairs=system.le_pairs,
        certificate=report,
    )


def maximal_elements(system: SeparationSystem, subset: Iterable[str]) -> tuple[str, ...]:
    members = set(subset)
    return tuple(sorted(x for x in members if not (system.up[x] - {x}) & members))


def minimal_elements(system: SeparationSystem, subset: Iterable[str]) -> tuple[str, ...]:
    members = set(subset)
    return tuple(sorted(x for x in members if not (system.down[x] - {x}) & members))


def down_closure(system: SeparationSystem, subset: Iterable[str]) -> frozenset[str]:
    closed: set[str] = set()
    for x in subset:
        closed |= system.down[x]
    return frozenset(closed)


def is_chain(system: SeparationSystem, subset: Iterable[str]) -> bool:
    members = sorted(set(subset))
    return all(
        system.le(a, b) or system.le(b, a) for i, a in enumerate(members) for b in members[i + 1 :]
    )
