from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

import networkx as nx

from core.errors import (
    AntisymmetryViolation,
    BondingNotFunctorial,
    BondingNotHomomorphism,
    EmptySystem,
    InvalidSelection,
    LemmaCounterexample,
    MissingBonding,
    NoSelectionExists,
    NotDirected,
    SepSysError,
    UnknownElement,
)
from core.homomorphism import IsomorphismLemmaReport, SystemMap, check_homomorphism, check_isomorphism_lemmas
from core.ops import SeparationSystem, TreeSet, as_tree_set, build_system, is_regular, is_tree_set
from orientations.ops import splitting_stars
from quotient.ops import QuotientPrestructure, Selection, chain_closure, is_branch_closed, quotient
from treesets.config import default_limits

logger = logging.getLogger(__name__)

HOST_POINT = "host"


@dataclass(frozen=True)
class IndexPoset:
    points: tuple[str, ...]
    le_pairs: frozenset[tuple[str, str]]

    def le(self, p: str, q: str) -> bool:
        return (p, q) in self.le_pairs

    def below(self, q: str) -> tuple[str, ...]:
        return tuple(p for p in self.points if self.le(p, q))

    def above(self, p: str) -> tuple[str, ...]:
        return tuple(q for q in self.points if self.le(p, q))

    def upper_bound(self, p: str, q: str) -> str:
        """Least-named common upper bound."""
        common = [r for r in self.points if self.le(p, r) and self.le(q, r)]
        if not common:
            raise NotDirected(p, q)
        return common[0]

    @property
    def greatest(self) -> str | None:
        top = [q for q in self.points if all(self.le(p, q) for p in self.points)]
        return top[0] if top else None

    def to_dict(self) -> dict[str, Any]:
        return {
            "points": list(self.points),
            "le": [[p, q] for p, q in sorted(self.le_pairs) if p != q],
        }


def build_index_poset(points: Iterable[str], le_generators: Iterable[Sequence[str]] = ()) -> IndexPoset:
    names = list(dict.fromkeys(points))
    if not names:
        raise EmptySystem("Index poset needs at least one point")
    graph = nx.DiGraph()
    graph.add_nodes_from(names)
    for generator in le_generators:
        p, q = tuple(generator)
        for point in (p, q):
            if point not in graph:
                raise UnknownElement(point, where="index")
        graph.add_edge(p, q)
    closure = nx.transitive_closure(graph)
    le_pairs = {(p, q) for p, q in closure.edges()} | {(p, p) for p in names}
    for p, q in sorted(le_pairs):
        if p != q and (q, p) in le_pairs:
            raise AntisymmetryViolation(p, q)
    index = IndexPoset(points=tuple(sorted(names)), le_pairs=frozenset(le_pairs))
    for p, q in itertools.combinations(index.points, 2):
        index.upper_bound(p, q)
    return index


@dataclass(frozen=True, eq=False)
class InverseSystem:
    """Finite systems over a directed index with bonding maps ``S_q -> S_p`` for ``p <= q``."""

    index: IndexPoset
    systems: Mapping[str, SeparationSystem]
    bonding: Mapping[tuple[str, str], SystemMap]
    labels: Mapping[str, Any] = field(default_factory=dict)

    def bond(self, source: str, target: str) -> SystemMap:
        try:
            return self.bonding[(source, target)]
        except KeyError:
            raise MissingBonding(source, target) from None

    def to_dict(self) -> dict[str, Any]:
        return {
            "index": self.index.to_dict(),
            "systems": {p: self.systems[p].to_dict() for p in self.index.points},
            "bonding": [
                {"source": source, "target": target, "table": f.to_dict()}
                for (source, target), f in sorted(self.bonding.items())
                if source != target
            ],
        }


def build_inverse_system(
    index: IndexPoset,
    systems: Mapping[str, SeparationSystem],
    bonding: Mapping[tuple[str, str], SystemMap | Mapping[str, str]],
    *,
    labels: Mapping[str, Any] | None = None,
    check_functorial: bool = True,
) -> InverseSystem:
    """Validate bonding maps and return the inverse system.

    ``bonding[(q, p)]`` maps ``S_q`` to ``S_p`` and must exist for every
    ``p < q``. Identity maps are filled in where absent.
    """
    for p in index.points:
        if p not in systems:
            raise SepSysError(f"No system at index point {p!r}")
    maps: dict[tuple[str, str], SystemMap] = {}
    for p, q in sorted(index.le_pairs):
        raw = bonding.get((q, p))
        if raw is None:
            if p != q:
                raise MissingBonding(q, p)
            raw = {x: x for x in systems[p].elements}
        f = raw if isinstance(raw, SystemMap) else SystemMap(systems[q], systems[p], dict(raw))
        report = check_homomorphism(f)
        if not report.ok:
            raise BondingNotHomomorphism(q, p, report)
        if p == q:
            for x in systems[p].elements:
                if f(x) != x:
                    raise BondingNotFunctorial((p, p, p), x)
        maps[(q, p)] = f
    for source, target in bonding:
        if (target, source) not in index.le_pairs:
            raise SepSysError(f"Bonding map {source!r} -> {target!r} does not follow the index order")

    if check_functorial:
        for r in index.points:
            for q in index.below(r):
                for p in index.below(q):
                    direct, first, second = maps[(r, p)], maps[(r, q)], maps[(q, p)]
                    for x in systems[r].elements:
                        if direct(x) != second(first(x)):
                            raise BondingNotFunctorial((r, q, p), x)
    logger.debug("inverse system over %d points", len(index.points))
    return InverseSystem(index=index, systems=dict(systems), bonding=maps, labels=dict(labels or {}))


@dataclass(frozen=True, eq=False)
class LimitSystem:
    system: SeparationSystem
    families: Mapping[str, Mapping[str, str]]
    projections: Mapping[str, SystemMap]

    def component(self, element: str, point: str) -> str:
        return self.families[element][point]


def _escape_component(name: str) -> str:
    return name.replace("\\", "\\\\").replace("|", "\\|")


def _limit_name(points: Sequence[str], family: Mapping[str, str]) -> str:
    """Component names joined with ``|``; separators inside a component are backslash-escaped."""
    return "|".join(_escape_component(family[p]) for p in points)


def _compatible_families(system: InverseSystem) -> list[dict[str, str]]:
    index = system.index
    order = sorted(index.points, key=lambda p: (-len(index.below(p)), p))
    chosen: dict[str, str] = {}
    found: list[dict[str, str]] = []

    def candidates(p: str) -> list[str]:
        fixed = {system.bond(q, p)(chosen[q]) for q in index.above(p) if q in chosen and q != p}
        if len(fixed) > 1:
            return []
        pool = sorted(fixed) if fixed else list(system.systems[p].elements)
        return [
            x
            for x in pool
            if all(system.bond(p, q)(x) == chosen[q] for q in index.below(p) if q in chosen and q != p)
        ]

    def walk(position: int) -> None:
        if position == len(order):
            found.append(dict(chosen))
            return
        p = order[position]
        for x in candidates(p):
            chosen[p] = x
            walk(position + 1)
            del chosen[p]

    walk(0)
    return found


def inverse_limit(system: InverseSystem) -> LimitSystem:
    """All compatible families with componentwise involution and order."""
    points = system.index.points
    families = {_limit_name(points, fam): fam for fam in _compatible_families(system)}
    names = sorted(families)
    lookup = {tuple(fam[p] for p in points): name for name, fam in families.items()}

    pairs: set[tuple[str, ...]] = set()
    for name in names:
        fam = families[name]
        mirrored = tuple(system.systems[p].inverse[fam[p]] for p in points)
        partner = lookup.get(mirrored)
        if partner is None:
            raise LemmaCounterexample("limit closed under the componentwise involution", name)
        pairs.add((name,) if partner == name else tuple(sorted((name, partner))))

    le = [
        (x, y)
        for x in names
        for y in names
        if x != y and all(system.systems[p].le(families[x][p], families[y][p]) for p in points)
    ]
    limit = build_system(names, sorted(pairs), le, name="limit")
    projections = {
        p: SystemMap(limit, system.systems[p], {name: families[name][p] for name in names}) for p in points
    }
    logger.debug("inverse limit over %d points has %d elements", len(points), len(names))
    return LimitSystem(system=limit, families=families, projections=projections)


@dataclass(frozen=True)
class LimitVerdict:
    tree_set: bool
    regular: bool
    elements: int

    def to_dict(self) -> dict[str, Any]:
        return {"tree_set": self.tree_set, "regular": self.regular, "elements": self.elements}


def verify_limit_tree_set(system: InverseSystem) -> LimitVerdict:
    """Certify the limit of tree sets as a tree set, and as regular when every component is."""
    components = {p: as_tree_set(s) for p, s in system.systems.items()}
    limit = inverse_limit(system)
    report = is_tree_set(limit.system)
    if not report.ok:
        raise LemmaCounterexample("inverse limits of tree sets are tree sets", report.to_dict())
    all_regular = all(is_regular(s) for s in components.values())
    limit_regular = is_regular(limit.system)
    if all_regular and not limit_regular:
        raise LemmaCounterexample("inverse limits of regular systems are regular", report.to_dict())
    return LimitVerdict(tree_set=True, regular=limit_regular, elements=len(limit.system))


@dataclass(frozen=True, eq=False)
class SelectionFamily:
    host: TreeSet
    selections: tuple[Selection, ...]
    truncated: bool
    directedness_failures: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...] = ()

    @property
    def directed(self) -> bool:
        return not self.directedness_failures

    def __len__(self) -> int:
        return len(self.selections)

    def to_dict(self) -> dict[str, Any]:
        return {
            "selections": [list(s.names) for s in self.selections],
            "truncated": self.truncated,
            "directed": self.directed,
        }


def _closure_fixpoint(host: SeparationSystem, members: Iterable[str]) -> frozenset[str]:
    current = frozenset(members)
    while True:
        grown = chain_closure(host, current)
        if grown == current:
            return current
        current = grown


def canonical_selection_family(
    host: SeparationSystem,
    *,
    reserved: Iterable[str] = (),
    cap: int | None = None,
) -> SelectionFamily:
    """All branch-closed selections of ``host`` ordered by size then names.

    Elements in ``reserved`` never enter a selection; on finite hosts nothing
    needs reserving. Selections larger than ``cap`` are not enumerated and the
    family is then flagged truncated.
    """
    tree = as_tree_set(host)
    limit = default_limits().selection_size_cap if cap is None else cap
    stars = [star.members for star in splitting_stars(tree)]
    excluded = set(reserved)
    for star in stars:
        if len(star) == 1:
            excluded |= star
    candidates = sorted(set(tree.elements) - excluded)
    truncated = len(candidates) > limit
    if truncated:
        logger.warning("selection enumeration capped at size %d of %d candidates", limit, len(candidates))

    found: list[Selection] = []
    for size in range(2, min(limit, len(candidates)) + 1):
        for combo in itertools.combinations(candidates, size):
            members = frozenset(combo)
            if any(len(star & members) == 1 for star in stars):
                continue
            selection = Selection(members)
            if is_branch_closed(tree, selection):
                found.append(selection)
    found.sort(key=lambda s: (len(s), s.names))

    known = {s.members for s in found}
    failures = []
    for first, second in itertools.combinations(found, 2):
        upper = _closure_fixpoint(tree, first.members | second.members)
        if upper not in known and not truncated:
            failures.append((first.names, second.names))
    logger.debug("canonical family of %r: %d selections", tree.name, len(found))
    return SelectionFamily(
        host=tree,
        selections=tuple(found),
        truncated=truncated,
        directedness_failures=tuple(failures),
    )


def selection_point(position: int, total: int) -> str:
    width = max(3, len(str(max(total - 1, 0))))
    return f"D{position:0{width}d}"


def _quotient_system(
    tree: TreeSet,
    quotients: Sequence[QuotientPrestructure],
    *,
    include_host: bool,
    check_functorial: bool,
) -> InverseSystem:
    points = [selection_point(i, len(quotients)) for i in range(len(quotients))]
    systems: dict[str, SeparationSystem] = {p: q.tree_set for p, q in zip(points, quotients)}
    labels: dict[str, Any] = {p: q.selection.names for p, q in zip(points, quotients)}
    generators: list[tuple[str, str]] = []
    bonding: dict[tuple[str, str], SystemMap] = {}
    for (p, coarse), (q, fine) in itertools.permutations(zip(points, quotients), 2):
        if coarse.selection.members < fine.selection.members:
            generators.append((p, q))
            table = {fine.class_of[x]: coarse.class_of[x] for x in tree.elements}
            bonding[(q, p)] = SystemMap(fine.tree_set, coarse.tree_set, table)
    if include_host:
        systems[HOST_POINT] = tree
        labels[HOST_POINT] = "host"
        for p, q in zip(points, quotients):
            generators.append((p, HOST_POINT))
            bonding[(HOST_POINT, p)] = q.projection

    index = build_index_poset(list(systems), generators)
    return build_inverse_system(index, systems, bonding, labels=labels, check_functorial=check_functorial)


def _certified_quotients(
    tree: TreeSet, selections: Iterable[Selection | Iterable[str]]
) -> list[QuotientPrestructure]:
    quotients = []
    for raw in selections:
        prestructure = quotient(tree, raw)
        if not prestructure.certified:
            raise InvalidSelection(f"Quotient by {list(prestructure.selection.names)} is not a tree set")
        quotients.append(prestructure)
    return quotients


def quotient_inverse_system(
    host: SeparationSystem,
    selections: Iterable[Selection | Iterable[str]],
    *,
    include_host: bool = False,
    check_functorial: bool = True,
) -> InverseSystem:
    """Quotients by ``selections`` ordered by inclusion, bonded by class projection."""
    tree = as_tree_set(host)
    quotients = _certified_quotients(tree, selections)
    if not quotients and not include_host:
        raise NoSelectionExists("No selections to build an inverse system from")
    return _quotient_system(tree, quotients, include_host=include_host, check_functorial=check_functorial)


def non_surjective_bondings(system: InverseSystem) -> tuple[tuple[str, str], ...]:
    return tuple(
        key for key, f in sorted(system.bonding.items()) if key[0] != key[1] and not f.is_surjective()
    )


def bonding_is_surjective(system: InverseSystem) -> bool:
    failing = non_surjective_bondings(system)
    if failing:
        logger.debug("non-surjective bondings: %s", failing)
    return not failing


@dataclass(frozen=True, eq=False)
class PhiResult:
    map: SystemMap
    limit: LimitSystem
    family: SelectionFamily
    report: IsomorphismLemmaReport

    def to_dict(self) -> dict[str, Any]:
        return {
            "selections": len(self.family),
            "limit_elements": len(self.limit.system),
            "bijective": self.map.is_bijective(),
            "isomorphism": self.report.is_isomorphism,
            "map": self.map.to_dict(),
        }


def phi(host: SeparationSystem) -> PhiResult:
    """Map each separation to its family of classes over the canonical selection family."""
    family = canonical_selection_family(host)
    if not family.selections:
        raise NoSelectionExists(f"Host {host.name!r} admits no selection")
    if family.truncated:
        raise SepSysError("Canonical selection family is truncated; raise selection_size_cap")
    tree = family.host
    quotients = _certified_quotients(tree, family.selections)
    system = _quotient_system(tree, quotients, include_host=False, check_functorial=True)
    limit = inverse_limit(system)
    points = [selection_point(i, len(quotients)) for i in range(len(quotients))]

    assignment = {}
    for x in tree.elements:
        classes = {p: q.class_of[x] for p, q in zip(points, quotients)}
        name = _limit_name(system.index.points, classes)
        if name not in limit.system:
            raise LemmaCounterexample("class families are compatible", {"element": x, "components": classes})
        assignment[x] = name
    f = SystemMap(tree, limit.system, assignment)
    if not f.is_bijective():
        raise LemmaCounterexample("canonical map onto the limit is a bijection", f.to_dict())
    report = check_isomorphism_lemmas(f)
    if not report.is_isomorphism:
        raise LemmaCounterexample("canonical map onto the limit is an isomorphism", report.to_dict())
    return PhiResult(map=f, limit=limit, family=family, report=report)
