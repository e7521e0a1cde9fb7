"""Fixed point properties of finite posets and finite T0 spaces."""

from ._fixpoint import (
    FixpointError,
    Poset,
    banach_stability_gap,
    canonical_form,
    classify,
    core,
    dual,
    find_selection_map,
    fixed_point_set,
    fpp_with_respect_to,
    has_fpp,
    is_connected,
    is_retract,
    iso_classes,
    map_count,
    parse_poset,
    product,
    radial_retraction,
    read_poset_file,
    scan,
)

__all__ = [
    "FixpointError",
    "Poset",
    "banach_stability_gap",
    "canonical_form",
    "classify",
    "core",
    "dual",
    "find_selection_map",
    "fixed_point_set",
    "fpp_with_respect_to",
    "has_fpp",
    "is_connected",
    "is_retract",
    "iso_classes",
    "map_count",
    "parse_poset",
    "product",
    "radial_retraction",
    "read_poset_file",
    "scan",
]
