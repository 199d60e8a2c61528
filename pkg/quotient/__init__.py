from .lemmas import LEMMA_CHECKS, LemmaSuiteReport, assert_quotient_lemmas, check_quotient_lemmas
from .ops import (
    BranchChain,
    BranchClosure,
    ClassSignature,
    QuotientPrestructure,
    Selection,
    branch_chain,
    branching_points,
    chain_closure,
    class_extrema,
    cross_class_three_stars,
    distinguishes,
    is_branch_closed,
    quotient,
    quotient_classes,
    splitting_star_sets,
    signature,
    three_star_obstructions,
    validate_selection,
)

__all__ = [
    "BranchChain",
    "BranchClosure",
    "ClassSignature",
    "LEMMA_CHECKS",
    "LemmaSuiteReport",
    "QuotientPrestructure",
    "Selection",
    "assert_quotient_lemmas",
    "branch_chain",
    "branching_points",
    "chain_closure",
    "check_quotient_lemmas",
    "class_extrema",
    "cross_class_three_stars",
    "distinguishes",
    "is_branch_closed",
    "quotient",
    "quotient_classes",
    "splitting_star_sets",
    "signature",
    "three_star_obstructions",
    "validate_selection",
]
