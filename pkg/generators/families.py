"""Truncation families: finite levels of infinite tree sets, nested by name.

Every family keeps element names stable from one level to the next, so the
embedding of level ``n`` into level ``n + 1`` is the inclusion of names.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable

from core.errors import GenerationError, NonPositiveInput, UnknownFixture
from core.homomorphism import SystemMap, check_homomorphism
from core.ops import TreeSet, as_tree_set, build_system
from generators.ops import chain_tree_set, dual_name, edge_name, edge_tree_set, path_edges, star_edges

logger = logging.getLogger(__name__)


def example_b_relation(n: int) -> set[tuple[str, str]]:
    """Strict relations of the caterpillar example, closed under the involution."""
    pairs: set[tuple[str, str]] = set()
    idx = range(1, n + 1)
    for i in idx:
        pairs.add((f"s{i}", "m"))
        pairs.add((f"t{i}", "m"))
        for j in idx:
            if i < j:
                pairs.add((f"s{i}", f"s{j}"))
            if i != j:
                pairs.add((f"t{i}", f"t{j}*"))
            if i <= j:
                pairs.add((f"s{i}", f"t{j}*"))
            if i > j:
                pairs.add((f"t{j}", f"s{i}"))
    pairs |= {(dual_name(b), dual_name(a)) for a, b in pairs}
    return pairs


def example_b(n: int) -> TreeSet:
    """Tree set on m, s1..sn, t1..tn whose branching chain from s1 to m grows with n."""
    if n < 1:
        raise NonPositiveInput(f"Example level must be positive, got {n}")
    base = ["m"] + [f"s{i}" for i in range(1, n + 1)] + [f"t{i}" for i in range(1, n + 1)]
    elements = base + [dual_name(x) for x in base]
    relation = example_b_relation(n)
    system = build_system(elements, [(x, dual_name(x)) for x in base], sorted(relation), name=f"example_B_{n}")
    extra = sorted((a, b) for a, b in system.le_pairs if a != b and (a, b) not in relation)
    if extra:
        raise GenerationError(f"Closure added relations outside the clauses: {extra[:5]}")
    return as_tree_set(system)


def _ray(n: int) -> TreeSet:
    return edge_tree_set(path_edges(n + 1, start=0), name=f"ray_{n}")


def _ray_witness(n: int) -> tuple[str, ...]:
    return tuple(edge_name(i, i + 1) for i in range(n))


def interval_points(n: int) -> list[Fraction]:
    """1 and 2 plus the points 1 + 2^-i for i = 1..n, approaching 1 from above.

    Evenly spaced points would move between levels. These points keep level
    ``n`` a subset of level ``n + 1``, so the inclusion of names embeds each
    level in the next, and the levels still accumulate at 1.
    """
    return [Fraction(1), Fraction(2)] + [1 + Fraction(1, 2**i) for i in range(1, n + 1)]


def _interval(n: int) -> TreeSet:
    return chain_tree_set(interval_points(n), name=f"interval_{n}")


def _star(n: int) -> TreeSet:
    return edge_tree_set(star_edges(n), name=f"infinite_star_{n}")


def _star_witness(n: int) -> tuple[str, ...]:
    return tuple(edge_name(leaf, 0) for leaf in range(1, n + 1))


@dataclass(frozen=True)
class TruncationFamily:
    name: str
    first_level: int
    limit_failure: str
    annotation: str
    builder: Callable[[int], TreeSet]
    witness: Callable[[int], tuple[str, ...]]

    def level(self, n: int) -> TreeSet:
        if n < self.first_level:
            raise NonPositiveInput(f"{self.name} starts at level {self.first_level}, got {n}")
        return _build_level(self.name, n)

    def embed(self, n: int) -> SystemMap:
        """Inclusion of level ``n`` into level ``n + 1``."""
        small, large = self.level(n), self.level(n + 1)
        missing = [x for x in small.elements if x not in large]
        if missing:
            raise GenerationError(f"{self.name} level {n} does not embed: {missing[:5]}")
        return SystemMap(small, large, {x: x for x in small.elements})

    def levels(self, bound: int) -> range:
        return range(self.first_level, max(bound, self.first_level) + 1)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "first_level": self.first_level,
            "limit_failure": self.limit_failure,
            "annotation": self.annotation,
        }


def check_embedding(family: TruncationFamily, n: int) -> bool:
    """Injective homomorphism that keeps strict relations strict."""
    f = family.embed(n)
    if not f.is_injective() or not check_homomorphism(f).ok:
        return False
    small, large = f.domain, f.codomain
    return all(
        large.strictly_le(f(x), f(y)) for x in small.elements for y in small.elements if small.strictly_le(x, y)
    )


FAMILIES: dict[str, TruncationFamily] = {
    "ray": TruncationFamily(
        name="ray",
        first_level=1,
        limit_failure="chain_complete",
        annotation="splittable and star-finite, but the forward edge chain has no supremum in the limit",
        builder=_ray,
        witness=_ray_witness,
    ),
    "interval": TruncationFamily(
        name="interval",
        first_level=1,
        limit_failure="splittable",
        annotation="every finite level splits; in the limit the only splitting stars are {-1} and {2}",
        builder=_interval,
        witness=lambda n: ("1", "2"),
    ),
    "infinite_star": TruncationFamily(
        name="infinite_star",
        first_level=3,
        limit_failure="star_finite",
        annotation="the centre star grows without bound and is a regular infinite splitting star in the limit",
        builder=_star,
        witness=_star_witness,
    ),
    "example_B": TruncationFamily(
        name="example_B",
        first_level=1,
        limit_failure="branch_bounded",
        annotation="C(s1, m) is infinite in the limit although s1 and m are regular",
        builder=example_b,
        witness=lambda n: ("s1", "m"),
    ),
}


def family(name: str) -> TruncationFamily:
    try:
        return FAMILIES[name]
    except KeyError:
        raise UnknownFixture(f"Unknown family {name!r}") from None


@lru_cache(maxsize=128)
def _build_level(name: str, n: int) -> TreeSet:
    logger.debug("building %s level %d", name, n)
    return FAMILIES[name].builder(n)
