from __future__ import annotations

import itertools
import logging
import random
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

import networkx as nx

from core.errors import EmptySystem, GenerationError, NonPositiveInput, NotATree
from core.ops import SeparationSystem, TreeSet, as_tree_set, build_system, comparable, trivial_elements

logger = logging.getLogger(__name__)

Edge = tuple[Hashable, Hashable]


def edge_name(u: Hashable, v: Hashable) -> str:
    return f"({u},{v})"


def _tree_graph(edges: Iterable[Sequence[Hashable]]) -> nx.Graph:
    pairs = [tuple(edge) for edge in edges]
    for pair in pairs:
        if len(pair) != 2:
            raise NotATree(f"Edges must be pairs, got {list(pair)!r}")
        if pair[0] == pair[1]:
            raise NotATree(f"Loop at vertex {pair[0]!r}")
    if not pairs:
        raise EmptySystem("A tree with a single vertex has an empty edge tree set")
    graph = nx.Graph()
    graph.add_edges_from(pairs)
    if graph.number_of_edges() != len(pairs):
        raise NotATree("Repeated edge")
    if not nx.is_connected(graph):
        raise NotATree("Graph is disconnected")
    if not nx.is_tree(graph):
        raise NotATree("Graph contains a cycle")
    return graph


def edge_sides(edges: Iterable[Sequence[Hashable]]) -> dict[str, frozenset[Hashable]]:
    """Vertex set on the ``u`` side of each oriented edge ``(u,v)``."""
    graph = _tree_graph(edges)
    sides: dict[str, frozenset[Hashable]] = {}
    for u, v in graph.edges():
        cut = nx.restricted_view(graph, [], [(u, v)])
        side_u = frozenset(nx.node_connected_component(cut, u))
        sides[edge_name(u, v)] = side_u
        sides[edge_name(v, u)] = frozenset(graph.nodes) - side_u
    return sides


def edge_tree_set(edges: Iterable[Sequence[Hashable]], *, name: str = "tree") -> TreeSet:
    """Oriented edges of a tree ordered by inclusion of their ``u`` sides."""
    pairs = [tuple(edge) for edge in edges]
    sides = edge_sides(pairs)
    elements = sorted(sides)
    involution = sorted({tuple(sorted((edge_name(u, v), edge_name(v, u)))) for u, v in pairs})
    le = [(a, b) for a in elements for b in elements if a != b and sides[a] <= sides[b]]
    tree = as_tree_set(build_system(elements, involution, le, name=name))
    logger.debug("edge tree set %r: %d elements", name, len(tree))
    return tree


def number_name(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def chain_tree_set(values: Iterable[int | float | str | Fraction], *, name: str = "chain") -> TreeSet:
    """Ground ``X`` and its negatives; comparable only within a sign, by numeric order."""
    numbers = sorted({Fraction(value) for value in values})
    if not numbers:
        raise EmptySystem("Chain tree set needs at least one value")
    if numbers[0] <= 0:
        raise NonPositiveInput(f"Values must be positive, got {number_name(numbers[0])}")
    positive = [number_name(x) for x in numbers]
    negative = ["-" + label for label in positive]
    le = []
    for i, low in enumerate(positive):
        for j in range(i + 1, len(positive)):
            le.append((low, positive[j]))
            le.append((negative[j], negative[i]))
    return as_tree_set(
        build_system(positive + negative, list(zip(positive, negative)), le, name=name)
    )


def random_tree_edges(n: int, seed: int | None = None) -> list[tuple[int, int]]:
    """Uniform random labelled tree on vertices ``1..n`` decoded from a Prüfer sequence."""
    if n < 1:
        raise NonPositiveInput(f"Tree needs at least one vertex, got {n}")
    if n == 1:
        return []
    if n == 2:
        return [(1, 2)]
    rng = random.Random(seed)
    sequence = [rng.randrange(n) for _ in range(n - 2)]
    graph = nx.from_prufer_sequence(sequence)
    return sorted((min(u, v) + 1, max(u, v) + 1) for u, v in graph.edges())


def all_trees(n: int) -> list[list[tuple[int, int]]]:
    """One edge list per isomorphism class of trees on ``n`` vertices."""
    if n < 2:
        return []
    return [
        sorted((min(u, v) + 1, max(u, v) + 1) for u, v in graph.edges())
        for graph in nx.nonisomorphic_trees(n)
    ]


def path_edges(n: int, *, start: int = 1) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(start, start + n - 1)]


def star_edges(n: int) -> list[tuple[int, int]]:
    return [(0, leaf) for leaf in range(1, n + 1)]


def dual_name(name: str) -> str:
    return name[:-1] if name.endswith("*") else name + "*"


def _mirrored_layout(pairs: int, rng: random.Random) -> list[str]:
    """``s1..sk`` and their duals on a line where ``x*`` sits at the mirror position of ``x``."""
    half = [f"s{i}" for i in range(1, pairs + 1)]
    rng.shuffle(half)
    half = [x if rng.random() < 0.5 else dual_name(x) for x in half]
    return half + [dual_name(x) for x in reversed(half)]


def _layout_system(line: Sequence[str], generators: Iterable[Sequence[str]], name: str) -> SeparationSystem:
    half = line[: len(line) // 2]
    return build_system(
        line,
        [(x, dual_name(x)) for x in half],
        generators,
        name=name,
        close_under_involution=True,
    )


def _mirror_orbits(size: int) -> list[tuple[int, int]]:
    """Position pairs ``i < j``, one per orbit of ``(i, j) -> (size-1-j, size-1-i)``."""
    return [
        (i, j)
        for i, j in itertools.combinations(range(size), 2)
        if (i, j) <= (size - 1 - j, size - 1 - i)
    ]


def layout_systems(pairs: int) -> list[SeparationSystem]:
    """Every system on ``pairs`` separations without degenerate elements, up to renaming.

    Each such system has a linear extension in which ``x*`` mirrors ``x``, so
    the forward generators of one fixed layout reach all of them. Systems with
    the same order are listed once.
    """
    if pairs < 1:
        raise NonPositiveInput(f"Need at least one separation, got {pairs}")
    half = [f"s{i}" for i in range(1, pairs + 1)]
    line = half + [dual_name(x) for x in reversed(half)]
    orbits = _mirror_orbits(len(line))
    found: dict[frozenset[tuple[str, str]], SeparationSystem] = {}
    for mask in range(2 ** len(orbits)):
        chosen = [(line[i], line[j]) for bit, (i, j) in enumerate(orbits) if mask >> bit & 1]
        system = _layout_system(line, chosen, f"layout{pairs}:{mask}")
        found.setdefault(system.le_pairs, system)
    logger.debug("%d systems on %d separations", len(found), pairs)
    return list(found.values())


def random_separation_system(
    pairs: int,
    seed: int | None = None,
    *,
    density: float = 0.3,
    name: str = "random",
) -> SeparationSystem:
    """Random system on ``pairs`` separations; each mirrored generator pair is kept with probability ``density``.

    Generators only point forward along a mirrored layout, so the closure is
    always a valid system. For a fixed seed a higher density only adds
    generators, so the identity is a homomorphism from the sparser system.
    """
    if pairs < 1:
        raise NonPositiveInput(f"Need at least one separation, got {pairs}")
    rng = random.Random(seed)
    line = _mirrored_layout(pairs, rng)
    generators = [(line[i], line[j]) for i, j in _mirror_orbits(len(line)) if rng.random() < density]
    return _layout_system(line, generators, name)


def _grow_nested(line: Sequence[str], rng: random.Random, small_rate: float, name: str) -> SeparationSystem | None:
    half = list(line[: len(line) // 2])
    position = {x: i for i, x in enumerate(line)}
    generators = [(x, dual_name(x)) for x in half if rng.random() < small_rate]
    system = _layout_system(line, generators, name)
    undecided = list(itertools.combinations(half, 2))
    rng.shuffle(undecided)
    for a, b in undecided:
        if comparable(system, system.separation_of(a), system.separation_of(b)):
            continue
        options = [(a, b) if position[a] < position[b] else (b, a), (a, dual_name(b))]
        rng.shuffle(options)
        for option in options:
            candidate = _layout_system(line, [*generators, option], name)
            if not trivial_elements(candidate):
                generators.append(option)
                system = candidate
                break
        else:
            return None
    return system


def random_tree_set(
    pairs: int,
    seed: int | None = None,
    *,
    small_rate: float = 0.25,
    attempts: int = 100,
    name: str = "random",
) -> TreeSet:
    """Random abstract tree set on ``pairs`` separations, with small elements at rate ``small_rate``.

    Every two separations are made comparable in one of the two ways the
    layout allows. A choice that creates a trivial element is swapped for the
    other one; when both do, the attempt restarts on a new layout.
    """
    if pairs < 1:
        raise NonPositiveInput(f"Need at least one separation, got {pairs}")
    rng = random.Random(seed)
    for _ in range(attempts):
        system = _grow_nested(_mirrored_layout(pairs, rng), rng, small_rate, name)
        if system is not None:
            return as_tree_set(system)
    raise GenerationError(f"No tree set on {pairs} separations after {attempts} attempts (seed {seed})")
