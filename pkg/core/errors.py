from __future__ import annotations

from typing import Any, Iterable


def _fmt(items: Iterable[str]) -> str:
    return "{" + ", ".join(sorted(items)) + "}"


class SepSysError(ValueError):
    """Base for every input or validation failure raised by the library."""


class UnknownElement(SepSysError):
    def __init__(self, element: str, *, where: str = "system") -> None:
        self.element = element
        super().__init__(f"Unknown element {element!r} in {where}")


class MissingInverse(SepSysError):
    def __init__(self, element: str, *, location: str | None = None) -> None:
        self.element = element
        self.location = location
        suffix = f" ({location})" if location else ""
        super().__init__(f"Element {element!r} has no inverse{suffix}")


class InvalidInvolution(SepSysError):
    def __init__(self, element: str, first: str, second: str) -> None:
        self.element = element
        super().__init__(f"Element {element!r} paired with both {first!r} and {second!r}")


class AntisymmetryViolation(SepSysError):
    def __init__(self, x: str, y: str) -> None:
        self.x, self.y = x, y
        super().__init__(f"Order is not antisymmetric: {x!r} <= {y!r} and {y!r} <= {x!r}")


class InvolutionNotOrderReversing(SepSysError):
    def __init__(self, x: str, y: str) -> None:
        self.x, self.y = x, y
        super().__init__(f"Involution does not reverse the order: {x!r} <= {y!r} but not its mirror")


class EmptySystem(SepSysError):
    pass


class NotTotal(SepSysError):
    def __init__(self, missing: Iterable[str]) -> None:
        self.missing = tuple(sorted(missing))
        super().__init__(f"Map is not total, missing: {', '.join(self.missing)}")


class NotBijective(SepSysError):
    pass


class NotNested(SepSysError):
    def __init__(self, pair: tuple[str, str]) -> None:
        self.pair = pair
        super().__init__(f"System is not nested: {pair[0]!r} crosses {pair[1]!r}")


class NotATreeSet(SepSysError):
    def __init__(self, report: Any) -> None:
        self.report = report
        super().__init__(f"Not a tree set: {report.summary()}")


class NotRegular(SepSysError):
    def __init__(self, small: Iterable[str]) -> None:
        self.small = tuple(sorted(small))
        super().__init__(f"Not regular, small elements: {', '.join(self.small)}")


class CotrivialInPartial(SepSysError):
    def __init__(self, element: str) -> None:
        self.element = element
        super().__init__(f"Partial orientation contains co-trivial element {element!r}")


class InconsistentPartial(SepSysError):
    pass


class TrivialDesignatedMax(SepSysError):
    def __init__(self, element: str) -> None:
        self.element = element
        super().__init__(f"Designated maximal element {element!r} is trivial")


class NotAStar(SepSysError):
    def __init__(self, members: Iterable[str]) -> None:
        self.members = frozenset(members)
        super().__init__(f"Not a star: {_fmt(self.members)}")


class WrongSize(SepSysError):
    pass


class InvalidSelection(SepSysError):
    pass


class EmptySelection(InvalidSelection):
    def __init__(self) -> None:
        super().__init__("Selection must be non-empty")


class StarMetOnce(InvalidSelection):
    def __init__(self, star: Iterable[str]) -> None:
        self.star = frozenset(star)
        super().__init__(f"Selection meets splitting star {_fmt(self.star)} exactly once")


class UnknownClass(SepSysError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"Unknown class {name!r}")


class NotDirected(SepSysError):
    def __init__(self, p: str, q: str) -> None:
        self.pair = (p, q)
        super().__init__(f"Index points {p!r} and {q!r} have no common upper bound")


class MissingBonding(SepSysError):
    def __init__(self, source: str, target: str) -> None:
        self.source, self.target = source, target
        super().__init__(f"No bonding map from {source!r} to {target!r}")


class BondingNotHomomorphism(SepSysError):
    def __init__(self, source: str, target: str, report: Any) -> None:
        self.source, self.target, self.report = source, target, report
        super().__init__(f"Bonding map {source!r} -> {target!r} is not a homomorphism")


class BondingNotFunctorial(SepSysError):
    def __init__(self, chain: tuple[str, str, str], element: str) -> None:
        self.chain, self.element = chain, element
        r, q, p = chain
        super().__init__(f"Bonding maps {r!r} -> {q!r} -> {p!r} disagree with {r!r} -> {p!r} on {element!r}")


class NoSelectionExists(SepSysError):
    pass


class HypothesisFailed(SepSysError):
    def __init__(self, which: str, witness: Any = None) -> None:
        self.which, self.witness = which, witness
        super().__init__(f"Hypothesis failed: {which}")


class NotATree(SepSysError):
    pass


class NonPositiveInput(SepSysError):
    pass


class UnknownFixture(SepSysError):
    pass


class NoDefaultSelection(SepSysError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"fixture {name!r} has no default selection; pass --selection")


class GenerationError(SepSysError):
    pass


class SepsysSyntaxError(SepSysError):
    def __init__(self, message: str, *, location: str | None = None) -> None:
        self.location = location
        prefix = f"{location}: " if location else ""
        super().__init__(f"{prefix}{message}")


class LemmaCounterexample(RuntimeError):
    """A checked structural fact failed; always a library bug."""

    def __init__(self, lemma: str, witness: Any) -> None:
        self.lemma, self.witness = lemma, witness
        super().__init__(f"Counterexample to {lemma}: {witness!r}")
