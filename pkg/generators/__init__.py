from .families import FAMILIES, TruncationFamily, check_embedding, example_b, example_b_relation, family, interval_points
from .ops import (
    all_trees,
    chain_tree_set,
    dual_name,
    edge_name,
    edge_sides,
    edge_tree_set,
    layout_systems,
    path_edges,
    random_separation_system,
    random_tree_edges,
    random_tree_set,
    star_edges,
)
from .registry import FixtureSpec, fixture_names, fixture_selection, is_family, load_fixtures, named_fixture, resolve_fixture

__all__ = [
    "FAMILIES",
    "FixtureSpec",
    "TruncationFamily",
    "all_trees",
    "chain_tree_set",
    "check_embedding",
    "dual_name",
    "edge_name",
    "edge_sides",
    "edge_tree_set",
    "example_b",
    "example_b_relation",
    "family",
    "fixture_names",
    "fixture_selection",
    "interval_points",
    "is_family",
    "layout_systems",
    "load_fixtures",
    "named_fixture",
    "resolve_fixture",
    "path_edges",
    "random_separation_system",
    "random_tree_edges",
    "random_tree_set",
    "star_edges",
]
