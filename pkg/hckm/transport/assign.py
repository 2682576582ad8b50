"""Capacitated assignment of points to a fixed center multiset.

Center copies at one location share a cost column, so they are merged into a
single sink whose capacity is multiplicity * u; the flow on that sink is then
dealt out to the copies in point-index order, u points per copy.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from hckm.compositions import Composition
from hckm.core.cost import evaluate_cost_d
from hckm.core.models import CostReport, Instance, Partition, as_points
from hckm.core.scaling import scale_costs, unscale
from hckm.errors import DimensionMismatchError
from hckm.geometry.distances import pairwise_sq
from hckm.geometry.voronoi import VoronoiIndex, evaluate_cost_h, h_tables
from hckm.transport.flow import solve
from hckm.transport.problem import AssignmentProblem, FlowResult
from hckm.types import FloatArray, IntArray, Metric

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MergedCenters:
    locations: FloatArray        # distinct center locations, first-occurrence order
    copies: list[list[int]]      # original center indices at each location

    @property
    def multiplicity(self) -> IntArray:
        return np.array([len(c) for c in self.copies], dtype=np.int64)


def merge_centers(centers: FloatArray) -> MergedCenters:
    points = as_points(centers)
    slot_of: dict[bytes, int] = {}
    copies: list[list[int]] = []
    order: list[int] = []
    for i, c in enumerate(points):
        key = c.tobytes()
        if key not in slot_of:
            slot_of[key] = len(copies)
            copies.append([])
            order.append(i)
        copies[slot_of[key]].append(i)
    return MergedCenters(locations=points[order], copies=copies)


def point_cost_tables(
    instance: Instance,
    locations: FloatArray,
    metric: Metric,
    index: VoronoiIndex | None = None,
) -> tuple[FloatArray, IntArray]:
    """Per point, per location cost under D or H, real and fixed point."""
    if metric is Metric.H:
        if index is None:
            raise ValueError("metric H needs a Voronoi index")
        return h_tables(index, locations)
    real = pairwise_sq(instance.points, locations)
    return real, scale_costs(real)


def _deal_to_copies(sink_of: IntArray, merged: MergedCenters, u: int) -> IntArray:
    labels = np.empty(sink_of.shape[0], dtype=np.int64)
    filled = [0] * len(merged.copies)
    for j, sink in enumerate(sink_of):
        labels[j] = merged.copies[sink][filled[sink] // u]
        filled[sink] += 1
    return labels


def assign_points(
    instance: Instance,
    centers: FloatArray,
    metric: Metric = Metric.D,
    index: VoronoiIndex | None = None,
    u: int | None = None,
) -> tuple[Partition, CostReport]:
    """Optimal capacity-respecting assignment of every point to the given centers."""
    cap = instance.u if u is None else u
    center_array = as_points(centers)
    if center_array.shape[1] != instance.dim:
        raise DimensionMismatchError(
            f"center dimension {center_array.shape[1]} != instance dimension {instance.dim}"
        )
    merged = merge_centers(center_array)
    real, scaled = point_cost_tables(instance, merged.locations, metric, index)
    problem = AssignmentProblem(
        supplies=np.ones(instance.n, dtype=np.int64),
        demands_cap=merged.multiplicity * cap,
        cost=real,
        scaled=scaled,
    )
    result = solve(problem)
    labels = _deal_to_copies(result.flow.argmax(axis=1), merged, cap)
    partition = Partition(labels, center_array)

    cost_d = evaluate_cost_d(instance, partition)
    if metric is Metric.H:
        report = CostReport(cost_d, unscale(result.total_scaled), result.total_scaled)
    elif index is not None:
        _, scaled_h = evaluate_cost_h(instance, partition, index)
        report = CostReport(cost_d, unscale(scaled_h), scaled_h)
    else:
        report = CostReport(cost_d)
    logger.debug("assigned %d points to %d centers (%s): cost_d=%.6g",
                 instance.n, center_array.shape[0], metric.value, cost_d)
    return partition, report


@dataclass(frozen=True)
class RegionAssignment:
    flow: FlowResult
    regions: IntArray     # rows: nonempty Voronoi regions
    slots: IntArray       # columns: slots holding at least one copy
    cost_h: float
    cost_h_scaled: int


def assign_regions_h(index: VoronoiIndex, composition: Composition, u: int) -> RegionAssignment:
    """|S| x |S| transportation under H with per-region supplies.

    Every point of region j costs d(x, s_j) + d(s_j, s_i) at slot i; the first
    term is the same for every slot, so it is added once as cost_D(S).
    """
    counts = np.asarray(composition.counts, dtype=np.int64)
    if counts.shape[0] != index.size:
        raise DimensionMismatchError(
            f"composition has {counts.shape[0]} slots, representing set has {index.size}"
        )
    regions = np.flatnonzero(index.per_region_count > 0)
    slots = np.flatnonzero(counts > 0)
    problem = AssignmentProblem(
        supplies=index.per_region_count[regions],
        demands_cap=counts[slots] * u,
        cost=index.gaps[np.ix_(regions, slots)],
        scaled=index.scaled_gaps[np.ix_(regions, slots)],
    )
    result = solve(problem)
    total = index.scaled_voronoi_cost + result.total_scaled
    return RegionAssignment(
        flow=result, regions=regions, slots=slots, cost_h=unscale(total), cost_h_scaled=total,
    )


def expand_region_assignment(
    index: VoronoiIndex, composition: Composition, assignment: RegionAssignment, u: int
) -> Partition:
    """Point-level partition realizing a region-level flow.

    Points of a region are interchangeable under H, so they are handed out in
    index order to the slots in proportion to the flow.
    """
    first_copy = np.concatenate([[0], np.cumsum(composition.counts)])[:-1]
    labels = np.empty(index.n, dtype=np.int64)
    filled = np.zeros(index.size, dtype=np.int64)
    for a, region in enumerate(assignment.regions):
        members = np.flatnonzero(index.labels == region)
        cursor = 0
        for b, slot in enumerate(assignment.slots):
            quantity = int(assignment.flow.flow[a, b])
            for j in members[cursor:cursor + quantity]:
                labels[j] = first_copy[slot] + filled[slot] // u
                filled[slot] += 1
            cursor += quantity
    return Partition(labels, composition.centers(index.representing))
