"""Brute-force ground truth for toy instances.

Set partitions are grown point by point (restricted growth: a point joins an
existing part or opens the next one), pruned when a part reaches u points,
when k parts are open, when the remaining points can no longer fit, and when
the partial within-part cost already reaches the incumbent.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np

from hckm.core.cost import check_feasibility, evaluate_cost_d
from hckm.core.models import Feasibility, Instance, Partition, as_points
from hckm.errors import InfeasibleInstanceError, OracleLimitError, TransportationInfeasibleError
from hckm.geometry.voronoi import VoronoiIndex
from hckm.transport.assign import point_cost_tables
from hckm.types import FloatArray, Metric

logger = logging.getLogger(__name__)

MAX_PARTITION_POINTS = 10
MAX_LABELINGS = 10**6
_BATCH = 1 << 15


@dataclass(frozen=True)
class OracleResult:
    opt_cost: float
    opt_partition: Partition
    nodes_explored: int
    opt_scaled: int | None = None


class _PartitionSearch:
    def __init__(self, points: FloatArray, k: int, cap: int) -> None:
        self.points = points
        self.n = points.shape[0]
        self.k = k
        self.cap = cap
        self.labels = [0] * self.n
        self.counts: list[int] = []
        self.means: list[np.ndarray] = []
        self.best_cost = math.inf
        self.best_labels: list[int] | None = None
        self.nodes = 0

    def run(self) -> None:
        self._extend(0, 0.0)

    def _fits(self, i: int) -> bool:
        room = sum(self.cap - c for c in self.counts) + (self.k - len(self.counts)) * self.cap
        return room >= self.n - i

    def _extend(self, i: int, cost: float) -> None:
        self.nodes += 1
        if cost >= self.best_cost or not self._fits(i):
            return
        if i == self.n:
            self.best_cost = cost
            self.best_labels = list(self.labels)
            return
        x = self.points[i]
        for part in range(len(self.counts)):
            count = self.counts[part]
            if count >= self.cap:
                continue
            mean = self.means[part]
            diff = x - mean
            delta = count / (count + 1) * float(diff @ diff)
            self.labels[i] = part
            self.counts[part] = count + 1
            self.means[part] = mean + diff / (count + 1)
            self._extend(i + 1, cost + delta)
            self.counts[part] = count
            self.means[part] = mean
        if len(self.counts) < self.k:
            self.labels[i] = len(self.counts)
            self.counts.append(1)
            self.means.append(x.copy())
            self._extend(i + 1, cost)
            self.counts.pop()
            self.means.pop()


def _search(instance: Instance, k: int, cap: int) -> OracleResult:
    if instance.n > MAX_PARTITION_POINTS:
        raise OracleLimitError(
            f"exact search limited to n <= {MAX_PARTITION_POINTS}, got n={instance.n}"
        )
    search = _PartitionSearch(instance.points, min(k, instance.n), cap)
    search.run()
    if search.best_labels is None:
        raise InfeasibleInstanceError(instance.n, instance.k, cap)
    labels = np.asarray(search.best_labels, dtype=np.int64)
    centers = np.repeat(instance.points[:1], instance.k, axis=0)
    for part in range(int(labels.max()) + 1):
        centers[part] = instance.points[labels == part].mean(axis=0)
    partition = Partition(labels, centers)
    cost = evaluate_cost_d(instance, partition)
    logger.debug("exact search n=%d k=%d cap=%d: cost=%.6g nodes=%d",
                 instance.n, k, cap, cost, search.nodes)
    return OracleResult(opt_cost=cost, opt_partition=partition, nodes_explored=search.nodes)


def exact_hckm(instance: Instance) -> OracleResult:
    """True optimum of hard-capacitated k-means for n <= 10."""
    if check_feasibility(instance) is Feasibility.INFEASIBLE:
        raise InfeasibleInstanceError(instance.n, instance.k, instance.u)
    return _search(instance, instance.k, instance.u)


def exact_km(instance: Instance) -> OracleResult:
    """Uncapacitated k-means optimum for n <= 10."""
    return _search(instance, instance.k, instance.n)


def exact_assignment(
    instance: Instance,
    centers: FloatArray,
    u: int | None = None,
    metric: Metric = Metric.D,
    index: VoronoiIndex | None = None,
) -> OracleResult:
    """Cheapest capacity-respecting labeling by trying every label vector.

    Costs are summed in the same fixed point as the flow solver, so the optimum
    is comparable exactly; ties go to the first labeling in product order.
    """
    cap = instance.u if u is None else u
    center_array = as_points(centers)
    k, n = center_array.shape[0], instance.n
    if k ** n > MAX_LABELINGS:
        raise OracleLimitError(f"{k}^{n} labelings exceed the limit of {MAX_LABELINGS}")
    real, scaled = point_cost_tables(instance, center_array, metric, index)
    if int(scaled.max(initial=0)) >= np.iinfo(np.int64).max // max(1, n):
        # row sums could leave int64
        scaled = scaled.astype(object)

    rows = np.arange(n)
    best_scaled: int | None = None
    best_labels: np.ndarray | None = None
    explored = 0
    product = itertools.product(range(k), repeat=n)
    while True:
        batch = np.array(list(itertools.islice(product, _BATCH)), dtype=np.int64)
        if batch.size == 0:
            break
        batch = batch.reshape(-1, n)
        explored += batch.shape[0]
        sizes = (batch[:, :, None] == np.arange(k)[None, None, :]).sum(axis=1)
        feasible = np.all(sizes <= cap, axis=1)
        if not feasible.any():
            continue
        candidates = batch[feasible]
        totals = scaled[rows[None, :], candidates].sum(axis=1)
        pick = int(np.argmin(totals))
        if best_scaled is None or int(totals[pick]) < best_scaled:
            best_scaled = int(totals[pick])
            best_labels = candidates[pick]
    if best_labels is None:
        raise TransportationInfeasibleError(f"no labeling of {n} points fits {k} x {cap}")
    partition = Partition(best_labels, center_array)
    return OracleResult(
        opt_cost=float(real[rows, best_labels].sum()),
        opt_partition=partition,
        nodes_explored=explored,
        opt_scaled=best_scaled,
    )
