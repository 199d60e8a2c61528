from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Literal, Mapping

from core.errors import NotBijective, NotTotal, UnknownElement
from core.ops import (
    SeparationSystem,
    build_system,
    crossing_pairs,
    is_regular,
    is_tree_set,
    small_elements,
)


@dataclass(frozen=True, eq=False)
class SystemMap:
    domain: SeparationSystem
    codomain: SeparationSystem
    assignment: Mapping[str, str]

    def __post_init__(self) -> None:
        missing = [x for x in self.domain.elements if x not in self.assignment]
        if missing:
            raise NotTotal(missing)
        for source, target in self.assignment.items():
            if source not in self.domain:
                raise UnknownElement(source, where="map domain")
            if target not in self.codomain:
                raise UnknownElement(target, where="map codomain")

    def __call__(self, element: str) -> str:
        return self.assignment[element]

    def image(self) -> frozenset[str]:
        return frozenset(self.assignment[x] for x in self.domain.elements)

    def is_injective(self) -> bool:
        return len(self.image()) == len(self.domain)

    def is_surjective(self) -> bool:
        return self.image() == frozenset(self.codomain.elements)

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def to_dict(self) -> dict[str, str]:
        return {x: self.assignment[x] for x in self.domain.elements}


def identity_map(system: SeparationSystem) -> SystemMap:
    return SystemMap(system, system, {x: x for x in system.elements})


def compose(first: SystemMap, second: SystemMap) -> SystemMap:
    """``second`` after ``first``."""
    return SystemMap(
        first.domain,
        second.codomain,
        {x: second(first(x)) for x in first.domain.elements},
    )


@dataclass(frozen=True)
class HomomorphismReport:
    involution_failures: tuple[str, ...] = ()
    order_failures: tuple[tuple[str, str], ...] = ()

    @property
    def ok(self) -> bool:
        return not (self.involution_failures or self.order_failures)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict[str, Any]:
        return {
            "homomorphism": self.ok,
            "involution_failures": list(self.involution_failures),
            "order_failures": [list(pair) for pair in self.order_failures],
        }


def check_homomorphism(f: SystemMap) -> HomomorphismReport:
    dom, cod = f.domain, f.codomain
    involution_failures = tuple(x for x in dom.elements if f(dom.inverse[x]) != cod.inverse[f(x)])
    order_failures = tuple(
        (x, y) for x, y in sorted(dom.le_pairs) if not cod.le(f(x), f(y))
    )
    return HomomorphismReport(involution_failures, order_failures)


@dataclass(frozen=True)
class IsomorphismLemmaReport:
    homomorphism: bool
    nested_regular_hypotheses: bool
    small_preimage_hypotheses: bool
    inverse_order_preserving: bool
    order_reflection_failures: tuple[tuple[str, str], ...]
    counterexamples: tuple[str, ...]

    @property
    def hypotheses_met(self) -> bool:
        return self.homomorphism and (self.nested_regular_hypotheses or self.small_preimage_hypotheses)

    @property
    def is_isomorphism(self) -> bool:
        return self.homomorphism and self.inverse_order_preserving

    @property
    def verdict(self) -> Literal["isomorphism", "not isomorphism"] | None:
        if not self.hypotheses_met:
            return None
        return "isomorphism" if self.inverse_order_preserving else "not isomorphism"

    def to_dict(self) -> dict[str, Any]:
        return {
            "homomorphism": self.homomorphism,
            "nested_regular_hypotheses": self.nested_regular_hypotheses,
            "small_preimage_hypotheses": self.small_preimage_hypotheses,
            "inverse_order_preserving": self.inverse_order_preserving,
            "verdict": self.verdict or "hypotheses not met",
            "counterexamples": list(self.counterexamples),
        }


def check_isomorphism_lemmas(f: SystemMap) -> IsomorphismLemmaReport:
    """Evaluate both isomorphism criteria for a bijective map and check their conclusion.

    Criterion one: nested domain and regular codomain. Criterion two: nested
    domain, codomain a tree set, and every element with a small image is small.
    The conclusion in both cases is that the inverse map preserves the order.
    """
    if not f.is_bijective():
        raise NotBijective("Isomorphism criteria need a bijective map")
    dom, cod = f.domain, f.codomain
    homomorphism = check_homomorphism(f).ok
    domain_nested = not crossing_pairs(dom)
    nested_regular = domain_nested and is_regular(cod)
    small_preimage = (
        domain_nested
        and is_tree_set(cod).ok
        and all(dom.le(x, dom.inverse[x]) for x in dom.elements if cod.le(f(x), cod.inverse[f(x)]))
    )
    failures = tuple(
        (x, y)
        for x in dom.elements
        for y in dom.elements
        if cod.le(f(x), f(y)) and not dom.le(x, y)
    )
    counterexamples: list[str] = []
    if homomorphism and failures:
        if nested_regular:
            counterexamples.append("nested domain with regular codomain")
        if small_preimage:
            counterexamples.append("nested domain into tree set with small preimages")
    return IsomorphismLemmaReport(
        homomorphism=homomorphism,
        nested_regular_hypotheses=nested_regular,
        small_preimage_hypotheses=small_preimage,
        inverse_order_preserving=not failures,
        order_reflection_failures=failures,
        counterexamples=tuple(counterexamples),
    )


def image_system(f: SystemMap) -> SeparationSystem:
    cod = f.codomain
    members = sorted(f.image())
    pairs = {tuple(sorted((x, cod.inverse[x]))) for x in members}
    return build_system(
        members,
        sorted(pairs),
        [(x, y) for x in members for y in members if cod.le(x, y)],
        name=f"image({cod.name})",
    )


@dataclass(frozen=True)
class PreservationReport:
    """Two facts every homomorphism must satisfy, with witnesses when they fail."""

    codomain_regular: bool
    domain_small: tuple[str, ...]
    domain_nested: bool
    image_crossing: tuple[tuple[str, str], ...]

    @property
    def regularity_pulled_back(self) -> bool:
        return not self.codomain_regular or not self.domain_small

    @property
    def nestedness_pushed_forward(self) -> bool:
        return not self.domain_nested or not self.image_crossing

    @property
    def ok(self) -> bool:
        return self.regularity_pulled_back and self.nestedness_pushed_forward


def check_preservation(f: SystemMap) -> PreservationReport:
    return PreservationReport(
        codomain_regular=is_regular(f.codomain),
        domain_small=small_elements(f.domain),
        domain_nested=not crossing_pairs(f.domain),
        image_crossing=crossing_pairs(image_system(f)),
    )
