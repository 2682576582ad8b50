"""Approximation-ratio formula and the D/H cost sandwich checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

from hckm.core.cost import evaluate_cost_d
from hckm.core.models import Instance, Partition
from hckm.errors import InvariantViolationError
from hckm.geometry.distances import REL_TOL
from hckm.geometry.voronoi import VoronoiIndex, evaluate_cost_h


def ratio_bound(lambda1: float, lambda2: float = 1.0) -> float:
    """3 lambda2 (11 + 12 lambda1): the guarantee from a lambda1 subroutine and a
    lambda2 H-solver. Exact H-solver and lambda1 = 1 + eps/36 give 69 + eps."""
    return 3.0 * lambda2 * (11.0 + 12.0 * lambda1)


def ratio_to_optimum(cost: float, opt: float) -> float:
    """cost / opt; 1 when both are zero, inf when only the optimum is."""
    if opt == 0:
        return 1.0 if cost == 0 else math.inf
    return cost / opt


@dataclass(frozen=True)
class SandwichReport:
    cost_d: float
    cost_h: float
    slack: float  # 3 cost_h - cost_d
    holds: bool


@dataclass(frozen=True)
class TwoSidedReport:
    cost_d: float
    cost_h: float
    lower: float  # cost_d / 3
    upper: float  # 11 cost_d + 12 cost_D(S)
    holds: bool


def _partition_of(solution_or_partition) -> Partition:
    return getattr(solution_or_partition, "partition", solution_or_partition)


def _leq(lhs: float, rhs: float) -> bool:
    return lhs <= rhs + REL_TOL * max(abs(lhs), abs(rhs))


def verify_sandwich(instance: Instance, index: VoronoiIndex, solution_or_partition,
                    strict: bool = True) -> SandwichReport:
    """cost_D <= 3 cost_H for the same assignment."""
    partition = _partition_of(solution_or_partition)
    cost_d = evaluate_cost_d(instance, partition)
    cost_h, _ = evaluate_cost_h(instance, partition, index)
    holds = _leq(cost_d, 3.0 * cost_h)
    if strict and not holds:
        raise InvariantViolationError(
            f"cost_d={cost_d!r} exceeds 3*cost_h={3.0 * cost_h!r} for a feasible assignment; "
            f"labels={partition.labels.tolist()} centers={partition.centers.tolist()}"
        )
    return SandwichReport(cost_d=cost_d, cost_h=cost_h, slack=3.0 * cost_h - cost_d, holds=holds)


def verify_two_sided(instance: Instance, index: VoronoiIndex, solution_or_partition,
                     strict: bool = True) -> TwoSidedReport:
    """cost_D / 3 <= cost_H <= 11 cost_D + 12 cost_D(S) for the same assignment."""
    partition = _partition_of(solution_or_partition)
    cost_d = evaluate_cost_d(instance, partition)
    cost_h, _ = evaluate_cost_h(instance, partition, index)
    lower = cost_d / 3.0
    upper = 11.0 * cost_d + 12.0 * index.voronoi_cost
    holds = _leq(lower, cost_h) and _leq(cost_h, upper)
    if strict and not holds:
        raise InvariantViolationError(
            f"cost_h={cost_h!r} outside [{lower!r}, {upper!r}]"
        )
    return TwoSidedReport(cost_d, cost_h, lower, upper, holds)
