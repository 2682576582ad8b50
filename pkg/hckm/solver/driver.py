"""End-to-end FPT approximation for hard-capacitated k-means.

feasibility gate -> representing set S -> sweep over every distribution of the
k centers on S, scoring each by its exact capacitated H cost -> point-level
assignment for the winner -> centroid update with labels fixed.
"""

from __future__ import annotations

import logging
import threading
import time
from dataclasses import dataclass, field, replace

import numpy as np

from hckm.compositions import (
    Composition,
    count_compositions,
    count_unpruned,
    pruning_cap,
)
from hckm.core.cost import check_feasibility, evaluate_cost_d, recenter
from hckm.core.models import CostReport, Feasibility, Instance, Partition
from hckm.core.scaling import unscale
from hckm.errors import InfeasibleInstanceError, InvariantViolationError
from hckm.geometry.voronoi import VoronoiIndex, build_voronoi_index, evaluate_cost_h
from hckm.observability.metrics import SweepMetrics
from hckm.oracle.exact import MAX_PARTITION_POINTS, exact_hckm, exact_km
from hckm.solver.bounds import ratio_bound, ratio_to_optimum
from hckm.solver.sweep import sweep
from hckm.subroutines.base import SubroutineConfig
from hckm.subroutines.quality import measure_lambda1
from hckm.subroutines.registry import SubroutineRegistry, default_registry
from hckm.transport.assign import assign_points
from hckm.types import FloatArray, Metric

logger = logging.getLogger(__name__)


@dataclass
class SolveOptions:
    subroutine: str = "overseed"
    workers: int = 1
    prune: bool = True
    progress_every: int = 1000
    cancel: threading.Event | None = None
    certify: bool = False  # oracle optimum and lambda1 when n is small enough

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class SubroutineStats:
    name: str
    size: int
    cost_d: float
    seed: int


@dataclass(frozen=True)
class EnumerationStats:
    total: int          # compositions in the (possibly pruned) stream
    unpruned: int       # C(|S| + k - 1, k)
    evaluated: int
    per_slot_cap: int
    chunks: int = 0
    avg_chunk_ms: int = 0


@dataclass(frozen=True)
class Solution:
    partition: Partition
    cost_before_recenter: CostReport
    cost_after_recenter: CostReport
    winning_composition: Composition
    compositions_evaluated: int
    subroutine_stats: SubroutineStats
    enumeration: EnumerationStats
    representing: FloatArray = field(repr=False)
    partition_before_recenter: Partition = field(repr=False)
    advertised_bound: float = 69.0
    complete: bool = True
    wall_time: float = 0.0  # seconds
    lambda1: float | None = None
    oracle_opt: float | None = None
    certified_ratio: float | None = None

    @property
    def k(self) -> int:
        return self.partition.k


def _check_output(instance: Instance, partition: Partition) -> None:
    if partition.k != instance.k:
        raise InvariantViolationError(f"{partition.k} centers, expected {instance.k}")
    if not partition.respects_capacity(instance.u):
        raise InvariantViolationError(
            f"cluster sizes {partition.sizes().tolist()} exceed capacity {instance.u}"
        )


def solve_hckm(
    instance: Instance,
    config: SubroutineConfig | None = None,
    options: SolveOptions | None = None,
    registry: SubroutineRegistry | None = None,
) -> Solution:
    """Run the full algorithm; raises InfeasibleInstanceError on k > n or k*u < n."""
    config = config or SubroutineConfig()
    options = options or SolveOptions()
    registry = registry or default_registry()
    started = time.monotonic()

    if check_feasibility(instance) is Feasibility.INFEASIBLE:
        raise InfeasibleInstanceError(instance.n, instance.k, instance.u)

    representing = registry.run(options.subroutine, instance, config)
    index = build_voronoi_index(instance, representing)
    logger.info(
        "representing set: |S|=%d cost_D(S)=%.6g subroutine=%s seed=%d",
        index.size, index.voronoi_cost, options.subroutine, config.rng_seed,
    )

    cap = pruning_cap(instance.n, instance.k, instance.u) if options.prune else instance.k
    metrics = SweepMetrics(
        compositions_total=count_compositions(index.size, instance.k, cap),
        compositions_unpruned=count_unpruned(index.size, instance.k),
    )
    logger.info(
        "sweeping %d compositions (%d unpruned, per-slot cap %d, workers %d)",
        metrics.compositions_total, metrics.compositions_unpruned, cap, options.workers,
    )
    outcome = sweep(
        index, instance.u, instance.k, cap, metrics,
        workers=options.workers, cancel=options.cancel, progress_every=options.progress_every,
    )
    if outcome.composition is None:
        raise InvariantViolationError(
            "composition stream produced no candidate for a feasible instance"
        )
    if not outcome.complete:
        logger.warning(
            "sweep incomplete: %d/%d compositions evaluated (%.1f%%), returning best so far",
            outcome.evaluated, metrics.compositions_total, 100 * metrics.progress(),
        )

    winner = outcome.composition
    centers = winner.centers(index.representing)
    partition, before = assign_points(instance, centers, Metric.H, index)
    if before.cost_h_scaled != outcome.cost_h_scaled:
        raise InvariantViolationError(
            f"point-level H cost {before.cost_h_scaled} != region-level {outcome.cost_h_scaled}"
        )
    _check_output(instance, partition)

    recentered = recenter(instance, partition)
    after_d = evaluate_cost_d(instance, recentered)
    if after_d > before.cost_d:
        # per-cluster gains lost to summation order
        recentered, after_d = partition, before.cost_d
    _, after_h_scaled = evaluate_cost_h(instance, recentered, index)
    after = CostReport(after_d, unscale(after_h_scaled), after_h_scaled)
    if not np.array_equal(recentered.labels, partition.labels):
        raise InvariantViolationError("recentering changed the labels")
    logger.info(
        "winner %s: cost_H=%.6g cost_D %.6g -> %.6g after recentering",
        winner, before.cost_h, before.cost_d, after.cost_d,
    )

    summary = metrics.summary()
    solution = Solution(
        partition=recentered,
        cost_before_recenter=before,
        cost_after_recenter=after,
        winning_composition=winner,
        compositions_evaluated=outcome.evaluated,
        subroutine_stats=SubroutineStats(
            name=options.subroutine, size=index.size, cost_d=index.voronoi_cost,
            seed=config.rng_seed,
        ),
        enumeration=EnumerationStats(
            total=summary["compositions_total"],
            unpruned=summary["compositions_unpruned"],
            evaluated=outcome.evaluated,
            per_slot_cap=cap,
            chunks=summary["chunks"],
            avg_chunk_ms=summary["avg_chunk_ms"],
        ),
        representing=index.representing,
        partition_before_recenter=partition,
        advertised_bound=ratio_bound(1.0 + config.epsilon_prime, 1.0),
        complete=outcome.complete,
        wall_time=time.monotonic() - started,
    )
    if options.certify:
        solution = certify(instance, solution)
    return solution


def certify(instance: Instance, solution: Solution) -> Solution:
    """Attach the exact optimum, the measured lambda1 and the achieved ratio.

    Instances above the oracle limit come back unchanged.
    """
    if instance.n > MAX_PARTITION_POINTS:
        logger.info(
            "certification skipped: n=%d above the oracle limit of %d",
            instance.n, MAX_PARTITION_POINTS,
        )
        return solution
    opt = exact_hckm(instance).opt_cost
    lambda1 = measure_lambda1(instance, solution.representing, exact_km(instance).opt_cost)
    ratio = ratio_to_optimum(solution.cost_after_recenter.cost_d, opt)
    logger.info("certified: opt=%.6g ratio=%.4g lambda1=%.4g", opt, ratio, lambda1)
    return replace(solution, lambda1=lambda1, oracle_opt=opt, certified_ratio=ratio)


def index_for(instance: Instance, solution: Solution) -> VoronoiIndex:
    """Rebuild the Voronoi index a solution was computed against."""
    return build_voronoi_index(instance, solution.representing)
