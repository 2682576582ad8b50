"""Domain model: instances, partitions, costs."""

from hckm.core.cost import centroid, check_feasibility, evaluate_cost_d, recenter
from hckm.core.models import CostReport, Feasibility, Instance, Partition, as_point

__all__ = [
    "CostReport",
    "Feasibility",
    "Instance",
    "Partition",
    "as_point",
    "centroid",
    "check_feasibility",
    "evaluate_cost_d",
    "recenter",
]
