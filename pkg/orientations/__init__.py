from .ops import (
    Orientation,
    Star,
    all_consistent_orientations,
    branching_stars,
    extend_orientation,
    find_branching_star,
    is_consistent,
    is_proper_star,
    is_star,
    lies_below_distinct,
    make_orientation,
    orientation_from_star,
    splits_at,
    splitting_stars,
)

__all__ = [
    "Orientation",
    "Star",
    "all_consistent_orientations",
    "branching_stars",
    "extend_orientation",
    "find_branching_star",
    "is_consistent",
    "is_proper_star",
    "is_star",
    "lies_below_distinct",
    "make_orientation",
    "orientation_from_star",
    "splits_at",
    "splitting_stars",
]
