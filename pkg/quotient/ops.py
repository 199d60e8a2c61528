from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, Mapping

from core.errors import EmptySelection, LemmaCounterexample, NotATreeSet, StarMetOnce, UnknownClass
from core.homomorphism import SystemMap
from core.ops import (
    SeparationSystem,
    TreeSet,
    as_tree_set,
    build_system,
    maximal_elements,
    minimal_elements,
)
from orientations.ops import is_star, splitting_stars

logger = logging.getLogger(__name__)


@lru_cache(maxsize=256)
def splitting_star_sets(host: SeparationSystem) -> tuple[frozenset[str], ...]:
    return tuple(star.members for star in splitting_stars(host))


@lru_cache(maxsize=256)
def branching_points(host: SeparationSystem) -> frozenset[str]:
    points: set[str] = set()
    for members in splitting_star_sets(host):
        if len(members) >= 3:
            points |= members
    return frozenset(points)


@dataclass(frozen=True)
class Selection:
    members: frozenset[str]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, element: object) -> bool:
        return element in self.members


@dataclass(frozen=True)
class ClassSignature:
    d_plus: frozenset[str]
    d_minus: frozenset[str]

    def to_dict(self) -> dict[str, list[str]]:
        return {"d_plus": sorted(self.d_plus), "d_minus": sorted(self.d_minus)}


def validate_selection(host: SeparationSystem, members: Iterable[str]) -> Selection:
    items = frozenset(members)
    if not items:
        raise EmptySelection()
    host.require(*items)
    as_tree_set(host)
    for star in splitting_star_sets(host):
        if len(star & items) == 1:
            raise StarMetOnce(star)
    return Selection(items)


def _coerce(host: SeparationSystem, selection: Selection | Iterable[str]) -> Selection:
    if isinstance(selection, Selection):
        return selection
    return validate_selection(host, selection)


def signature(host: SeparationSystem, selection: Selection | Iterable[str], element: str) -> ClassSignature:
    chosen = _coerce(host, selection)
    host.require(element)
    inverse = host.inverse[element]
    return ClassSignature(
        d_plus=frozenset(d for d in chosen.members if host.strictly_le(d, element)),
        d_minus=frozenset(d for d in chosen.members if host.strictly_le(d, inverse)),
    )


def distinguishes(
    host: SeparationSystem,
    selection: Selection | Iterable[str],
    d: str,
    r: str,
    s: str,
) -> bool:
    host.require(d)
    first = signature(host, selection, r)
    second = signature(host, selection, s)
    return d in (first.d_plus ^ second.d_plus) or d in (first.d_minus ^ second.d_minus)


def class_name(members: Iterable[str]) -> str:
    return f"[{min(members)}]"


def quotient_classes(host: SeparationSystem, selection: Selection | Iterable[str]) -> dict[str, frozenset[str]]:
    """Classes of D-equivalence keyed by their bracketed least member."""
    chosen = _coerce(host, selection)
    groups: dict[ClassSignature, set[str]] = {}
    for element in host.elements:
        groups.setdefault(signature(host, chosen, element), set()).add(element)
    classes = {class_name(members): frozenset(members) for members in groups.values()}
    return dict(sorted(classes.items()))


def class_extrema(
    host: SeparationSystem,
    selection: Selection | Iterable[str],
    name: str,
) -> tuple[tuple[str, ...], tuple[str, ...]]:
    classes = quotient_classes(host, selection)
    if name not in classes:
        raise UnknownClass(name)
    members = classes[name]
    return minimal_elements(host, members), maximal_elements(host, members)


@dataclass(frozen=True)
class BranchChain:
    s: str
    t: str
    forward: tuple[str, ...]
    backward: tuple[str, ...]

    @property
    def points(self) -> frozenset[str]:
        return frozenset(self.forward) | frozenset(self.backward)

    def __len__(self) -> int:
        return len(self.forward) + len(self.backward)

    def to_dict(self) -> dict[str, Any]:
        return {"s": self.s, "t": self.t, "forward": list(self.forward), "backward": list(self.backward)}


def _chain_order(host: SeparationSystem, points: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(points, key=lambda x: (len(host.down[x]), x)))


def branch_chain(host: SeparationSystem, s: str, t: str) -> BranchChain:
    """Branching points between orientations of ``s`` and ``t``, split into two chains.

    The forward chain lies between the first comparable orientation pair found
    starting from ``s``; the backward chain holds the remaining points.
    """
    host.require(s, t)
    points = branching_points(host)
    ends: list[tuple[str, str]] = []
    for a in (s, host.inverse[s]):
        for b in (t, host.inverse[t]):
            if host.le(a, b) and (a, b) not in ends:
                ends.append((a, b))
            if host.le(b, a) and (b, a) not in ends:
                ends.append((b, a))

    def between(low: str, high: str) -> set[str]:
        return {d for d in points if host.le(low, d) and host.le(d, high)}

    forward = between(*ends[0]) if ends else set()
    backward: set[str] = set()
    for low, high in ends[1:]:
        backward |= between(low, high)
    backward -= forward
    return BranchChain(s, t, _chain_order(host, forward), _chain_order(host, backward))


def chain_closure(host: SeparationSystem, members: Iterable[str]) -> frozenset[str]:
    """``members`` together with every C(s, s') for s, s' among them."""
    items = sorted(set(members))
    closed = set(items)
    for s, t in itertools.combinations_with_replacement(items, 2):
        closed |= branch_chain(host, s, t).points
    return frozenset(closed)


@dataclass(frozen=True)
class BranchClosure:
    closed: bool
    missing: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.closed


def is_branch_closed(host: SeparationSystem, selection: Selection | Iterable[str]) -> BranchClosure:
    """Every branching point b with d1 <= b <= d2* for some d1, d2 in D must lie in D."""
    chosen = _coerce(host, selection)
    members = chosen.members
    missing = sorted(
        b
        for b in branching_points(host) - members
        if any(host.le(d, b) for d in members) and any(host.le(b, host.inverse[d]) for d in members)
    )
    return BranchClosure(closed=not missing, missing=tuple(missing))


def cross_class_three_stars(
    host: SeparationSystem,
    class_of: Mapping[str, str],
    class_inverse: Mapping[str, str],
) -> tuple[tuple[str, str, str], ...]:
    """Three-stars ``(r, s1, s2*)`` with s1 ~ s2 and r in neither class of s1.

    Swapping the roles of s1 and s2* describes the same star, so each
    unordered triple is reported once, in its least ordered form.
    """
    found: dict[frozenset[str], tuple[str, str, str]] = {}
    for s1, s2 in itertools.permutations(host.elements, 2):
        if class_of[s1] != class_of[s2]:
            continue
        inv_s2 = host.inverse[s2]
        if inv_s2 == s1:
            continue
        banned = {class_of[s1], class_inverse[class_of[s1]]}
        for r in host.elements:
            if r in (s1, inv_s2) or class_of[r] in banned:
                continue
            if is_star(host, (r, s1, inv_s2)):
                key = frozenset((r, s1, inv_s2))
                triple = (r, s1, inv_s2)
                found[key] = min(found.get(key, triple), triple)
    return tuple(sorted(found.values()))



def _mirror(host_inverse: Mapping[str, str], triple: tuple[str, str, str]) -> tuple[str, str, str]:
    a, b, c = triple
    return (host_inverse[c], host_inverse[b], host_inverse[a])


@dataclass(frozen=True, eq=False)
class QuotientPrestructure:
    host: SeparationSystem
    selection: Selection
    classes: Mapping[str, frozenset[str]]
    class_of: Mapping[str, str]
    inverse: Mapping[str, str]
    le_pairs: frozenset[tuple[str, str]]
    signatures: Mapping[str, ClassSignature]
    transitivity_violations: tuple[tuple[str, str, str], ...]
    trivial_classes: tuple[str, ...]
    antisymmetry_violations: tuple[tuple[str, str], ...]
    three_star_witnesses: tuple[tuple[str, str, str], ...]
    tree_set: TreeSet | None
    projection: SystemMap | None

    @property
    def certified(self) -> bool:
        return self.tree_set is not None

    def le(self, a: str, b: str) -> bool:
        return (a, b) in self.le_pairs

    def to_dict(self) -> dict[str, Any]:
        return {
            "selection": list(self.selection.names),
            "classes": {name: sorted(members) for name, members in self.classes.items()},
            "inverse": dict(sorted(self.inverse.items())),
            "le": [[a, b] for a, b in sorted(self.le_pairs) if a != b],
            "transitivity_violations": [list(t) for t in self.transitivity_violations],
            "trivial_classes": list(self.trivial_classes),
            "antisymmetry_violations": [list(p) for p in self.antisymmetry_violations],
            "three_star_witnesses": [list(t) for t in self.three_star_witnesses],
            "certified": self.certified,
        }


def quotient(host: SeparationSystem, selection: Selection | Iterable[str]) -> QuotientPrestructure:
    """Partition ``host`` by D-signature and report every defect of the induced structure."""
    chosen = _coerce(host, selection)
    signatures = {x: signature(host, chosen, x) for x in host.elements}
    groups: dict[ClassSignature, set[str]] = {}
    for element, sig in signatures.items():
        groups.setdefault(sig, set()).add(element)
    classes = dict(sorted((class_name(m), frozenset(m)) for m in groups.values()))
    class_of = {x: name for name, members in classes.items() for x in members}
    class_signatures = {class_of[x]: sig for x, sig in signatures.items()}

    inverse: dict[str, str] = {}
    for name, members in classes.items():
        images = {class_of[host.inverse[x]] for x in members}
        if len(images) != 1:
            raise LemmaCounterexample("involution respects D-equivalence", {"class": name, "images": sorted(images)})
        inverse[name] = images.pop()

    le_pairs = frozenset((class_of[x], class_of[y]) for x, y in host.le_pairs)
    above: dict[str, set[str]] = {name: set() for name in classes}
    for a, b in le_pairs:
        above[a].add(b)

    antisymmetry = tuple(sorted((a, b) for a, b in le_pairs if a < b and (b, a) in le_pairs))

    violations: set[tuple[str, str, str]] = set()
    for a in classes:
        for b in above[a] - {a}:
            for c in above[b] - {b}:
                if c not in above[a]:
                    triple = (a, b, c)
                    violations.add(min(triple, _mirror(inverse, triple)))

    trivial = tuple(
        sorted(
            a
            for a in classes
            if any(b not in (a, inverse[a]) and inverse[b] in above[a] for b in above[a])
        )
    )

    witnesses: tuple[tuple[str, str, str], ...] = ()
    if violations:
        witnesses = cross_class_three_stars(host, class_of, inverse)

    tree_set: TreeSet | None = None
    projection: SystemMap | None = None
    if not (violations or trivial or antisymmetry):
        system = build_system(
            list(classes),
            sorted({tuple(sorted((a, inverse[a]))) for a in classes}),
            sorted(le_pairs),
            name=f"{host.name}/D" if host.name else "quotient",
        )
        try:
            tree_set = as_tree_set(system)
        except NotATreeSet:
            logger.warning("quotient of %r passed order checks but is not a tree set", host.name)
        else:
            projection = SystemMap(host, tree_set, class_of)

    logger.debug(
        "quotient of %r by %s: %d classes, %d violations, %d trivial",
        host.name,
        chosen.names,
        len(classes),
        len(violations),
        len(trivial),
    )
    return QuotientPrestructure(
        host=host,
        selection=chosen,
        classes=classes,
        class_of=class_of,
        inverse=inverse,
        le_pairs=le_pairs,
        signatures=class_signatures,
        transitivity_violations=tuple(sorted(violations)),
        trivial_classes=trivial,
        antisymmetry_violations=antisymmetry,
        three_star_witnesses=witnesses,
        tree_set=tree_set,
        projection=projection,
    )


def three_star_obstructions(
    host: SeparationSystem,
    selection: Selection | Iterable[str],
) -> tuple[tuple[str, str, str], ...]:
    """Three-stars {r, s1, s2*} with s1 ~ s2 and r equivalent to neither s1 nor s1*."""
    prestructure = quotient(host, selection)
    return cross_class_three_stars(host, prestructure.class_of, prestructure.inverse)
