"""Exact capacitated assignment as a transportation problem."""

from hckm.transport.assign import (
    RegionAssignment,
    assign_points,
    assign_regions_h,
    expand_region_assignment,
    merge_centers,
    point_cost_tables,
)
from hckm.transport.flow import solve
from hckm.transport.problem import AssignmentProblem, FlowResult

__all__ = [
    "AssignmentProblem",
    "FlowResult",
    "RegionAssignment",
    "assign_points",
    "assign_regions_h",
    "expand_region_assignment",
    "merge_centers",
    "point_cost_tables",
    "solve",
]
