"""Squared-Euclidean metric D and the representing-set metric H."""

from hckm.geometry.distances import (
    check_extended_triangle,
    check_four_point,
    dist_d,
    pairwise_sq,
)
from hckm.geometry.voronoi import (
    VoronoiIndex,
    build_voronoi_index,
    dist_h,
    evaluate_cost_h,
    h_tables,
    h_upper_bound_holds,
    snap_center,
)

__all__ = [
    "VoronoiIndex",
    "build_voronoi_index",
    "check_extended_triangle",
    "check_four_point",
    "dist_d",
    "dist_h",
    "evaluate_cost_h",
    "h_tables",
    "h_upper_bound_holds",
    "pairwise_sq",
    "snap_center",
]
