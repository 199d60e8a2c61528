from .ops import (
    HOST_POINT,
    IndexPoset,
    InverseSystem,
    LimitSystem,
    LimitVerdict,
    PhiResult,
    SelectionFamily,
    bonding_is_surjective,
    build_index_poset,
    build_inverse_system,
    canonical_selection_family,
    inverse_limit,
    non_surjective_bondings,
    phi,
    quotient_inverse_system,
    verify_limit_tree_set,
)

__all__ = [
    "HOST_POINT",
    "IndexPoset",
    "InverseSystem",
    "LimitSystem",
    "LimitVerdict",
    "PhiResult",
    "SelectionFamily",
    "bonding_is_surjective",
    "build_index_poset",
    "build_inverse_system",
    "canonical_selection_family",
    "inverse_limit",
    "non_surjective_bondings",
    "phi",
    "quotient_inverse_system",
    "verify_limit_tree_set",
]
