"""Checkers for chain-completeness, splittability, star-finiteness and bounded branching.

On a finite host every checker either holds or returns a violation with the
failing configuration. On a truncation family the limit cannot be inspected,
so the annotated property is judged from evidence across levels and the
others are reported as unknown up to the bound.
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Any, Callable

import networkx as nx

from core.errors import GenerationError, NonPositiveInput
from core.ops import SeparationSystem, is_chain, maximal_elements, small_elements
from generators.families import TruncationFamily, check_embedding
from quotient.ops import branch_chain, splitting_star_sets
from sepsys_contracts.models import PROPERTY_VERDICT
from treesets.config import Limits, default_limits

logger = logging.getLogger(__name__)

PROPERTY_NAMES = ("chain_complete", "splittable", "star_finite", "branch_bounded")


def _verdict(name: str, verdict: str, subject: str, **extra: Any) -> PROPERTY_VERDICT:
    return PROPERTY_VERDICT(name=name, verdict=verdict, subject=subject, **extra)


def _comparability_graph(host: SeparationSystem) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(host.elements)
    graph.add_edges_from((x, y) for x, y in host.le_pairs if x != y)
    return graph


def is_chain_complete(host: SeparationSystem, *, limits: Limits | None = None) -> PROPERTY_VERDICT:
    """Every chain has a greatest element lying below each of its upper bounds.

    Small hosts are checked on every chain; larger ones on maximal chains only.
    """
    limits = limits or default_limits()
    graph = _comparability_graph(host)
    exhaustive = len(host) <= limits.chain_check_max_elements
    chains = nx.enumerate_all_cliques(graph) if exhaustive else nx.find_cliques(graph)
    checked = 0
    for chain in chains:
        checked += 1
        top = maximal_elements(host, chain)
        upper = set.intersection(*(set(host.up[x]) for x in chain))
        if len(top) != 1 or not all(host.le(top[0], u) for u in upper):
            return _verdict(
                "chain_complete",
                "violated",
                host.name,
                witness={"chain": sorted(chain), "maximal": list(top)},
            )
    return _verdict(
        "chain_complete",
        "holds",
        host.name,
        details={"chains_checked": checked, "mode": "all" if exhaustive else "maximal"},
    )


def splitting_pair(host: SeparationSystem, r: str, s: str) -> tuple[frozenset[str], str, str] | None:
    """A splitting star with distinct members a, b such that r <= a and s* <= b."""
    s_inv = host.inverse[s]
    for star in splitting_star_sets(host):
        for a, b in itertools.permutations(sorted(star), 2):
            if host.le(r, a) and host.le(s_inv, b):
                return star, a, b
    return None


def is_splittable(host: SeparationSystem) -> PROPERTY_VERDICT:
    pairs = 0
    for r in host.elements:
        for s in sorted(host.up[r]):
            if not host.strictly_le(r, s):
                continue
            pairs += 1
            if splitting_pair(host, r, s) is None:
                return _verdict("splittable", "violated", host.name, witness={"pair": [r, s]})
    return _verdict("splittable", "holds", host.name, details={"strict_pairs": pairs})


def _star_graph(host: SeparationSystem) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(host.elements)
    graph.add_edges_from(
        (r, s) for r, s in itertools.combinations(host.elements, 2) if host.le(r, host.inverse[s])
    )
    return graph


def largest_star(host: SeparationSystem) -> tuple[str, ...]:
    cliques = sorted((tuple(sorted(c)) for c in nx.find_cliques(_star_graph(host))), key=lambda c: (-len(c), c))
    return cliques[0] if cliques else ()


def star_report(host: SeparationSystem) -> PROPERTY_VERDICT:
    """Star sizes of a finite host; finite hosts are star-finite."""
    stars = splitting_star_sets(host)
    small = set(small_elements(host))
    largest_splitting = max(stars, key=lambda s: (len(s), sorted(s)), default=frozenset())
    regular_branching = sorted(sorted(s) for s in stars if len(s) >= 3 and not s & small)
    return _verdict(
        "star_finite",
        "holds",
        host.name,
        details={
            "largest_star": len(largest_star(host)),
            "largest_splitting_star": len(largest_splitting),
            "splitting_star": sorted(largest_splitting),
            "regular_branching_stars": regular_branching,
        },
    )


def _regular_separations(host: SeparationSystem) -> list[tuple[str, ...]]:
    small = set(small_elements(host))
    return [sep for sep in host.separations if not set(sep) & small]


def branch_bound_report(host: SeparationSystem) -> PROPERTY_VERDICT:
    """Largest C(s, s') over pairs of regular separations."""
    best: tuple[int, Any] = (0, None)
    for s, t in itertools.combinations_with_replacement(_regular_separations(host), 2):
        chain = branch_chain(host, s[0], t[0])
        if len(chain) > best[0]:
            best = (len(chain), chain)
    details: dict[str, Any] = {"max_branch_chain": best[0]}
    if best[1] is not None:
        details["pair"] = [best[1].s, best[1].t]
        details["chain"] = best[1].to_dict()
    return _verdict("branch_bounded", "holds", host.name, details=details)


CHECKERS: dict[str, Callable[[SeparationSystem], PROPERTY_VERDICT]] = {
    "chain_complete": is_chain_complete,
    "splittable": is_splittable,
    "star_finite": star_report,
    "branch_bounded": branch_bound_report,
}


def run_battery(host: SeparationSystem) -> list[PROPERTY_VERDICT]:
    verdicts = [CHECKERS[name](host) for name in PROPERTY_NAMES]
    logger.debug("battery on %r: %s", host.name, [v.verdict for v in verdicts])
    return verdicts


def _growing(values: list[int], window: int) -> bool:
    """Strictly increasing over the last ``window`` levels."""
    if len(values) < window:
        return False
    tail = values[-window:]
    return all(a < b for a, b in zip(tail, tail[1:]))


def _require_persistent(family: TruncationFamily, levels: list[int], witnesses: list[frozenset[str]]) -> None:
    for n, current, following in zip(levels, witnesses, witnesses[1:]):
        if not check_embedding(family, n):
            raise GenerationError(f"{family.name}: level {n} does not embed into level {n + 1}")
        if not current <= following:
            raise GenerationError(f"{family.name}: witness at level {n} does not persist at level {n + 1}")


def _chain_evidence(family: TruncationFamily, levels: list[int]) -> dict[str, Any]:
    chains, suprema = [], []
    for n in levels:
        host = family.level(n)
        chain = family.witness(n)
        if not is_chain(host, chain):
            raise GenerationError(f"{family.name}: witness at level {n} is not a chain")
        chains.append(frozenset(chain))
        suprema.append(maximal_elements(host, chain)[0])
    _require_persistent(family, levels, chains)
    shifts = all(sup not in earlier for sup, earlier in zip(suprema[1:], chains))
    return {
        "witness": {"chain": list(family.witness(levels[-1])), "suprema": suprema},
        "details": {"supremum_moves_every_level": shifts},
    }


def _interval_evidence(family: TruncationFamily, levels: list[int]) -> dict[str, Any]:
    r, s = family.witness(levels[0])
    gaps, splits = [], []
    for n in levels:
        host = family.level(n)
        if splitting_pair(host, r, s) is None:
            raise GenerationError(f"{family.name}: pair {r}, {s} does not split at level {n}")
        above = sorted(Fraction(x) for x in host.elements if not x.startswith("-") and Fraction(x) > Fraction(r))
        gaps.append(str(above[0] - Fraction(r)))
        splits.append(
            sum(
                1
                for star in splitting_star_sets(host)
                if any(host.le(r, a) and host.le(host.inverse[s], b) for a, b in itertools.permutations(star, 2))
            )
        )
    _require_persistent(family, levels, [frozenset((r, s))] * len(levels))
    return {
        "witness": {"pair": [r, s], "gap_above": gaps},
        "details": {"splits_between": splits},
    }


def _star_evidence(family: TruncationFamily, levels: list[int], window: int) -> dict[str, Any]:
    stars, sizes = [], []
    for n in levels:
        host = family.level(n)
        star = frozenset(family.witness(n))
        if star not in splitting_star_sets(host):
            raise GenerationError(f"{family.name}: witness at level {n} is not a splitting star")
        stars.append(star)
        sizes.append(max(len(s) for s in splitting_star_sets(host)))
    _require_persistent(family, levels, stars)
    return {
        "violated": _growing(sizes, window) and not stars[-1] & set(small_elements(family.level(levels[-1]))),
        "witness": {"star": sorted(stars[-1]), "star_sizes": sizes},
    }


def _branch_evidence(family: TruncationFamily, levels: list[int], window: int) -> dict[str, Any]:
    chains, sizes, totals = [], [], []
    for n in levels:
        host = family.level(n)
        s, t = family.witness(n)
        chain = branch_chain(host, s, t)
        chains.append(frozenset(chain.forward))
        sizes.append(len(chain.forward))
        totals.append(len(chain))
    _require_persistent(family, levels, chains)
    s, t = family.witness(levels[-1])
    return {
        "violated": _growing(sizes, window),
        "witness": {"pair": [s, t], "chain": sorted(chains[-1]), "chain_sizes": sizes, "total_sizes": totals},
    }


def run_family_battery(
    family: TruncationFamily,
    bound: int | None = None,
    *,
    limits: Limits | None = None,
) -> list[PROPERTY_VERDICT]:
    """Judge the four properties on levels ``first_level..bound`` of ``family``."""
    limits = limits or default_limits()
    bound = limits.family_bound if bound is None else bound
    if bound < family.first_level:
        raise NonPositiveInput(f"Bound {bound} is below the first level {family.first_level} of {family.name}")
    levels = list(family.levels(bound))
    subject = f"{family.name}[{levels[0]}..{levels[-1]}]"
    window = limits.star_growth_window

    verdicts = []
    for name in PROPERTY_NAMES:
        if name != family.limit_failure:
            failing = [n for n in levels if CHECKERS[name](family.level(n)).verdict != "holds"]
            if failing:
                raise GenerationError(f"{family.name}: {name} fails at finite level {failing[0]}")
            verdicts.append(
                _verdict(name, "unknown_up_to", subject, bound=bound, details={"holds_at_levels": len(levels)})
            )
            continue
        if name == "chain_complete":
            evidence = _chain_evidence(family, levels)
            verdicts.append(
                _verdict(
                    name,
                    "unknown_up_to",
                    subject,
                    bound=bound,
                    witness=evidence["witness"],
                    details=evidence["details"],
                    limit_annotation=family.annotation,
                )
            )
        elif name == "splittable":
            evidence = _interval_evidence(family, levels)
            verdicts.append(
                _verdict(
                    name,
                    "unknown_up_to",
                    subject,
                    bound=bound,
                    witness=evidence["witness"],
                    details=evidence["details"],
                    limit_annotation="not splittable in the limit: the only splitting stars are {-1} and {2}",
                )
            )
        else:
            evidence = (
                _star_evidence(family, levels, window)
                if name == "star_finite"
                else _branch_evidence(family, levels, window)
            )
            outcome = "violated" if evidence["violated"] else "unknown_up_to"
            verdicts.append(
                _verdict(
                    name,
                    outcome,
                    subject,
                    bound=bound,
                    witness=evidence["witness"],
                    limit_annotation=family.annotation,
                )
            )
    logger.debug("family battery on %s: %s", subject, [v.verdict for v in verdicts])
    return verdicts
