"""Invariant suite behind ``hckm check``.

Each check returns a CheckResult instead of raising so one run reports every
breach at once.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from hckm.compositions import count_compositions, unrank
from hckm.core.models import Instance
from hckm.geometry.distances import check_extended_triangle, check_four_point
from hckm.geometry.voronoi import VoronoiIndex, h_upper_bound_holds
from hckm.solver.bounds import verify_sandwich, verify_two_sided
from hckm.solver.driver import Solution
from hckm.transport.assign import assign_points, assign_regions_h
from hckm.types import Metric

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    holds: bool
    trials: int = 1
    detail: str = ""


@dataclass
class CheckReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.holds for r in self.results)

    def add(self, result: CheckResult) -> None:
        level = logging.INFO if result.holds else logging.ERROR
        logger.log(level, "check %s: %s (%d trials) %s",
                   result.name, "ok" if result.holds else "FAILED", result.trials, result.detail)
        self.results.append(result)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {"name": r.name, "holds": r.holds, "trials": r.trials, "detail": r.detail}
                for r in self.results
            ],
        }


def _triangle(instance: Instance, index: VoronoiIndex, rng: np.random.Generator,
              samples: int) -> list[CheckResult]:
    pts = instance.points
    picks = rng.integers(0, instance.n, size=(samples, 4))
    centers = index.representing[rng.integers(0, index.size, size=samples)]
    bad_triangle = bad_four = bad_upper = 0
    for (a, b, c, d), center in zip(picks, centers):
        bad_triangle += not check_extended_triangle(pts[a], pts[b], pts[c])
        bad_four += not check_four_point(pts[a], pts[b], pts[c], pts[d])
        bad_upper += not h_upper_bound_holds(pts[a], center, index)
    return [
        CheckResult("extended_triangle", bad_triangle == 0, samples, f"{bad_triangle} violations"),
        CheckResult("four_point", bad_four == 0, samples, f"{bad_four} violations"),
        CheckResult("h_upper_bound", bad_upper == 0, samples, f"{bad_upper} violations"),
    ]


def _feasibility(instance: Instance, solution: Solution) -> CheckResult:
    partition = solution.partition
    sizes = partition.sizes().tolist()
    holds = partition.k == instance.k and partition.respects_capacity(instance.u)
    return CheckResult("feasibility", holds, detail=f"k={partition.k} sizes={sizes}")


def _recentering(solution: Solution) -> CheckResult:
    before = solution.cost_before_recenter.cost_d
    after = solution.cost_after_recenter.cost_d
    same_labels = np.array_equal(
        solution.partition.labels, solution.partition_before_recenter.labels
    )
    return CheckResult(
        "recentering_monotone", after <= before and same_labels,
        detail=f"{before:.6g} -> {after:.6g}, labels unchanged={same_labels}",
    )


def _h_optimality(instance: Instance, solution: Solution, index: VoronoiIndex,
                  rng: np.random.Generator, samples: int) -> CheckResult:
    if not solution.complete:
        return CheckResult("h_optimal_over_S", True, 0, "skipped: sweep was cancelled")
    cap = solution.enumeration.per_slot_cap
    best = solution.cost_before_recenter.cost_h_scaled
    total = count_compositions(index.size, instance.k, cap)
    ranks = rng.integers(0, total, size=min(samples, total))
    beaten = 0
    for rank in ranks:
        alt = unrank(int(rank), index.size, instance.k, cap)
        beaten += assign_regions_h(index, alt, instance.u).cost_h_scaled < best
    return CheckResult("h_optimal_over_S", beaten == 0, len(ranks),
                       f"{beaten} cheaper compositions")


def _snapping(instance: Instance, solution: Solution, index: VoronoiIndex,
              rng: np.random.Generator, samples: int) -> CheckResult:
    if not solution.complete:
        return CheckResult("center_snapping", True, 0, "skipped: sweep was cancelled")
    best = solution.cost_before_recenter.cost_h_scaled
    base = solution.partition_before_recenter.centers
    scale = max(float(np.sqrt(index.voronoi_cost / max(1, instance.n))), 1e-3)
    improved = 0
    for _ in range(samples):
        centers = base.copy()
        j = int(rng.integers(0, centers.shape[0]))
        centers[j] = centers[j] + rng.normal(0.0, scale, size=instance.dim)
        _, report = assign_points(instance, centers, Metric.H, index)
        improved += report.cost_h_scaled < best
    return CheckResult("center_snapping", improved == 0, samples,
                       f"{improved} perturbations lowered cost_H")


def run_checks(instance: Instance, solution: Solution, index: VoronoiIndex,
               samples: int = 100, seed: int = 0) -> CheckReport:
    rng = np.random.default_rng(seed)
    report = CheckReport()
    for result in _triangle(instance, index, rng, samples):
        report.add(result)

    sandwich = verify_sandwich(instance, index, solution, strict=False)
    report.add(CheckResult("sandwich", sandwich.holds,
                           detail=f"cost_d={sandwich.cost_d:.6g} cost_h={sandwich.cost_h:.6g}"))
    two_sided = verify_two_sided(instance, index, solution, strict=False)
    report.add(CheckResult(
        "two_sided_bound", two_sided.holds,
        detail=f"{two_sided.lower:.6g} <= {two_sided.cost_h:.6g} <= {two_sided.upper:.6g}",
    ))
    report.add(_feasibility(instance, solution))
    report.add(_recentering(solution))
    report.add(_h_optimality(instance, solution, index, rng, samples))
    report.add(_snapping(instance, solution, index, rng, max(1, samples // 10)))
    return report
