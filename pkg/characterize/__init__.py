from .ops import (
    CHECKERS,
    PROPERTY_NAMES,
    branch_bound_report,
    is_chain_complete,
    is_splittable,
    largest_star,
    run_battery,
    run_family_battery,
    splitting_pair,
    star_report,
)

__all__ = [
    "CHECKERS",
    "PROPERTY_NAMES",
    "branch_bound_report",
    "is_chain_complete",
    "is_splittable",
    "largest_star",
    "run_battery",
    "run_family_battery",
    "splitting_pair",
    "star_report",
]
