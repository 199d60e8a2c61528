"""Executable forms of the structural facts about D-equivalence and the quotient.

Each check takes a host tree set and a computed :class:`QuotientPrestructure`
and returns the configurations that contradict the fact. An empty tuple means
the fact held on this input. Checks flagged ``branch_closed`` only apply when
the selection is branch-closed; ``certified`` ones only when the quotient was
certified a tree set.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from core.errors import LemmaCounterexample
from core.ops import SeparationSystem
from orientations.ops import splitting_stars
from quotient.ops import (
    QuotientPrestructure,
    Selection,
    cross_class_three_stars,
    is_branch_closed,
    quotient,
)

logger = logging.getLogger(__name__)

Witnesses = tuple[Any, ...]


def _equiv(q: QuotientPrestructure, x: str, y: str) -> bool:
    return q.class_of[x] == q.class_of[y]


def involution_respects_classes(host: SeparationSystem, q: QuotientPrestructure) -> Witnesses:
    return tuple(
        (r, s)
        for r, s in itertools.combinations(host.elements, 2)
        if _equiv(q, r, s) and not _equiv(q, host.inverse[r], host.inverse[s])
    )


def classes_are_convex(host: SeparationSystem, q: QuotientPrestructure) -> Witnesses:
    """r <= s <= t with r ~ t puts s in the same class."""
    found = []
    for r in host.elements:
        for t in host.up[r]:
            if t == r or not _equiv(q, r, t):
                continue
            for s in host.up[r] & host.down[t]:
                if not _equiv(q, r, s):
                    found.append((r, s, t))
    return tuple(found)


def unbounded_below_absorbs(host: SeparationSystem, q: QuotientPrestructure) -> Witnesses:
    """Nothing of D strictly below s means everything below s is equivalent to s."""
    found = []
    for s in host.elements:
        if any(host.strictly_le(d, s) for d in q.selection.members):
            continue
        found.extend((r, s) for r in host.down[s] if not _equiv(q, r, s))
    return tuple(found)


def below_inverse_absorbs(host: SeparationSystem, q: QuotientPrestructure) -> Witnesses:
    """r <= s <= t* with s ~ t gives r ~ s."""
    found = []
    for s, t in itertools.permutations(host.elements, 2):
        if not _equiv(q, s, t) or not host.le(s, host.inverse[t]):
            continue
        found.extend((r, s, t) for r in host.down[s] if not _equiv(q, r, s))
    return tuple(found)


def above_inverse_absorbs(host: SeparationSystem, q: QuotientPrestructure) -> Witnesses:
    """r >= s >= t* with s ~ t gives r ~ s."""
    found = []
    for s, t in itertools.permutations(host.elements, 2):
        if not _equiv(q, s, t) or not host.le(host.inverse[t], s):
            continue
        found.extend((r, s, t) for r in host.up[s] if not _equiv(q, r, s))
    return tuple(found)


def class_order_antisymmetric(host: SeparationSystem, q: QuotientPrestructure) -> Witnesses:
    """r <= x and y <= s with r ~ s and x ~ y force r ~ x."""
    found = []
    for name, members in q.classes.items():
        for other, others in q.classes.items():
            if name >= other:
                continue
            below = any(host.le(r, x) for r in members for x in others)
            above = any(host.le(y, s) for s in members for y in others)
            if below and above:
                found.append((name, other))
    return tuple(found)


def never_equivalent_to_inverse(host: SeparationSystem, q: QuotientPrestructure) -> Witnesses:
    return tuple(s for s in host.elements if _equiv(q, s, host.inverse[s]))


def nontransitivity_has_three_star(host: SeparationSystem, q: QuotientPrestructure) -> Witnesses:
    if q.transitivity_violations and not q.three_star_witnesses:
        return q.transitivity_violations
    return ()


def three_star_bounded_by_selection(host: SeparationSystem, q: QuotientPrestructure) -> Witnesses:
    """Each obstruction {r, s1, s2*} has d1 < s1 and d2 < s2* with d1, d2 in D."""
    witnesses = q.three_star_witnesses or cross_class_three_stars(host, q.class_of, q.inverse)
    members = q.selection.members
    return tuple(
        (r, s1, s2_inv)
        for r, s1, s2_inv in witnesses
        if not any(host.strictly_le(d, s1) for d in members)
        or not any(host.strictly_le(d, s2_inv) for d in members)
    )


def trivial_configuration_bounded(host: SeparationSystem, q: QuotientPrestructure) -> Witnesses:
    """r <= x <= s* with r ~ s but x in neither class of r needs D below r*, s* and each side of x."""
    members = q.selection.members
    found = []
    for r, s in itertools.product(host.elements, repeat=2):
        if not _equiv(q, r, s):
            continue
        inv_r, inv_s = host.inverse[r], host.inverse[s]
        for x in host.up[r] & host.down[inv_s]:
            if _equiv(q, r, x) or _equiv(q, r, host.inverse[x]):
                continue
            for side in (x, host.inverse[x]):
                if not any(
                    host.strictly_le(d, inv_r) and host.strictly_le(d, inv_s) and host.strictly_le(d, side)
                    for d in members
                ):
                    found.append((r, s, x, side))
    return tuple(found)


def branch_closed_is_transitive(host: SeparationSystem, q: QuotientPrestructure) -> Witnesses:
    return q.transitivity_violations


def branch_closed_has_no_trivial_class(host: SeparationSystem, q: QuotientPrestructure) -> Witnesses:
    return q.trivial_classes


def branch_closed_is_certified(host: SeparationSystem, q: QuotientPrestructure) -> Witnesses:
    return () if q.certified else (q.selection.names,)


def quotient_order_reflects(host: SeparationSystem, q: QuotientPrestructure) -> Witnesses:
    """A strict class relation [r] < [s] forces r < s in the host."""
    found = []
    for r, s in itertools.permutations(host.elements, 2):
        a, b = q.class_of[r], q.class_of[s]
        if b in (a, q.inverse[a]) or not q.le(a, b):
            continue
        if not host.strictly_le(r, s):
            found.append((r, s))
    return tuple(found)


def star_classes_split_by_selection(host: SeparationSystem, q: QuotientPrestructure) -> Witnesses:
    """In a splitting star meeting D, distinct r ~ s exactly when neither lies in D."""
    members = q.selection.members
    found = []
    for star in splitting_stars(host):
        if not star.members & members:
            continue
        for r, s in itertools.combinations(sorted(star.members), 2):
            if _equiv(q, r, s) != (r not in members and s not in members):
                found.append((star.names, r, s))
    return tuple(found)


def three_class_star_meets_selection(host: SeparationSystem, q: QuotientPrestructure) -> Witnesses:
    members = q.selection.members
    return tuple(
        star.names
        for star in splitting_stars(host)
        if len({q.class_of[x] for x in star.members}) >= 3 and not star.members & members
    )


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    run: Callable[[SeparationSystem, QuotientPrestructure], Witnesses]
    branch_closed: bool = False
    certified: bool = False


LEMMA_CHECKS: tuple[LemmaCheck, ...] = (
    LemmaCheck("involution_respects_classes", involution_respects_classes),
    LemmaCheck("classes_are_convex", classes_are_convex),
    LemmaCheck("unbounded_below_absorbs", unbounded_below_absorbs),
    LemmaCheck("below_inverse_absorbs", below_inverse_absorbs),
    LemmaCheck("above_inverse_absorbs", above_inverse_absorbs),
    LemmaCheck("class_order_antisymmetric", class_order_antisymmetric),
    LemmaCheck("never_equivalent_to_inverse", never_equivalent_to_inverse),
    LemmaCheck("nontransitivity_has_three_star", nontransitivity_has_three_star),
    LemmaCheck("three_star_bounded_by_selection", three_star_bounded_by_selection),
    LemmaCheck("trivial_configuration_bounded", trivial_configuration_bounded),
    LemmaCheck("branch_closed_is_transitive", branch_closed_is_transitive, branch_closed=True),
    LemmaCheck("branch_closed_has_no_trivial_class", branch_closed_has_no_trivial_class, branch_closed=True),
    LemmaCheck("branch_closed_is_certified", branch_closed_is_certified, branch_closed=True),
    LemmaCheck("quotient_order_reflects", quotient_order_reflects, certified=True),
    LemmaCheck("star_classes_split_by_selection", star_classes_split_by_selection, branch_closed=True),
    LemmaCheck("three_class_star_meets_selection", three_class_star_meets_selection, branch_closed=True),
)


@dataclass(frozen=True)
class LemmaSuiteReport:
    selection: tuple[str, ...]
    branch_closed: bool
    certified: bool
    checked: tuple[str, ...]
    failures: dict[str, Witnesses] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        return {
            "selection": list(self.selection),
            "branch_closed": self.branch_closed,
            "certified": self.certified,
            "checked": list(self.checked),
            "failures": {name: [list(w) if isinstance(w, tuple) else w for w in found] for name, found in self.failures.items()},
        }


def check_quotient_lemmas(
    host: SeparationSystem,
    selection: Selection | Iterable[str],
    *,
    only: Iterable[str] | None = None,
) -> LemmaSuiteReport:
    prestructure = quotient(host, selection)
    closed = bool(is_branch_closed(host, prestructure.selection))
    wanted = set(only) if only is not None else None
    checked: list[str] = []
    failures: dict[str, Witnesses] = {}
    for check in LEMMA_CHECKS:
        if wanted is not None and check.name not in wanted:
            continue
        if check.branch_closed and not closed:
            continue
        if check.certified and not prestructure.certified:
            continue
        checked.append(check.name)
        found = check.run(host, prestructure)
        if found:
            failures[check.name] = found
    if failures:
        logger.warning("quotient facts failed for %s: %s", prestructure.selection.names, sorted(failures))
    return LemmaSuiteReport(
        selection=prestructure.selection.names,
        branch_closed=closed,
        certified=prestructure.certified,
        checked=tuple(checked),
        failures=failures,
    )


def assert_quotient_lemmas(host: SeparationSystem, selection: Selection | Iterable[str]) -> LemmaSuiteReport:
    report = check_quotient_lemmas(host, selection)
    if not report.ok:
        name = sorted(report.failures)[0]
        raise LemmaCounterexample(name, report.failures[name])
    return report
