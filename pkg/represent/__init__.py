from .ops import (
    GROUND_KINDS,
    EverBranchingReport,
    Representation,
    bipartition_name,
    bipartition_system,
    has_splitting_two_star,
    is_ever_branching,
    maximal_two_stars,
    orientation_ground,
    represent,
)

__all__ = [
    "GROUND_KINDS",
    "EverBranchingReport",
    "Representation",
    "bipartition_name",
    "bipartition_system",
    "has_splitting_two_star",
    "is_ever_branching",
    "maximal_two_stars",
    "orientation_ground",
    "represent",
]
