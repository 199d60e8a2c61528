from .errors import LemmaCounterexample, SepSysError
from .homomorphism import (
    HomomorphismReport,
    IsomorphismLemmaReport,
    PreservationReport,
    SystemMap,
    check_homomorphism,
    check_isomorphism_lemmas,
    check_preservation,
    compose,
    identity_map,
    image_system,
)
from .ops import (
    NestedReport,
    SeparationSystem,
    TreeSet,
    TreeSetReport,
    as_tree_set,
    build_system,
    down_closure,
    is_cosmall,
    is_cotrivial,
    is_degenerate,
    is_nested,
    is_regular,
    is_small,
    is_tree_set,
    is_trivial,
    maximal_elements,
    minimal_elements,
    trivial_witness,
)

__all__ = [
    "SepSysError",
    "LemmaCounterexample",
    "SeparationSystem",
    "TreeSet",
    "TreeSetReport",
    "NestedReport",
    "SystemMap",
    "HomomorphismReport",
    "IsomorphismLemmaReport",
    "PreservationReport",
    "build_system",
    "as_tree_set",
    "is_small",
    "is_cosmall",
    "is_degenerate",
    "is_trivial",
    "is_cotrivial",
    "trivial_witness",
    "is_nested",
    "is_regular",
    "is_tree_set",
    "maximal_elements",
    "minimal_elements",
    "down_closure",
    "check_homomorphism",
    "check_isomorphism_lemmas",
    "check_preservation",
    "compose",
    "identity_map",
    "image_system",
]
