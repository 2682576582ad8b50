"""Voronoi index over the representing set S and the routed distance h.

h(x, y) = d(x, pi(x)) + d(pi(x), pi(y)) + d(pi(y), y), where pi maps a point to
its nearest representing point (lowest index in S on ties). h(x, x) is
2 d(x, pi(x)), so H is a cost function rather than a metric.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from hckm.core.models import Instance, Partition, as_points
from hckm.core.scaling import scale_costs
from hckm.errors import DimensionMismatchError
from hckm.geometry.distances import REL_TOL, dist_d, pairwise_sq
from hckm.types import FloatArray, IntArray


@dataclass(frozen=True)
class VoronoiIndex:
    representing: FloatArray      # S, shape (m, d)
    labels: IntArray              # region of every data point
    nearest_dist: FloatArray      # d(x, pi(x)) for every data point
    per_region_count: IntArray    # n_j
    voronoi_cost: float           # cost_D(S)
    gaps: FloatArray              # d(s_i, s_j), shape (m, m)

    @property
    def size(self) -> int:
        return int(self.representing.shape[0])

    @property
    def n(self) -> int:
        return int(self.labels.shape[0])

    @cached_property
    def scaled_gaps(self) -> IntArray:
        return scale_costs(self.gaps)

    @cached_property
    def scaled_nearest(self) -> IntArray:
        return scale_costs(self.nearest_dist)

    @cached_property
    def scaled_voronoi_cost(self) -> int:
        """cost_D(S) in fixed point, summed per point."""
        return int(self.scaled_nearest.sum(dtype=object))

    def nearest_of(self, j: int) -> tuple[int, float]:
        """Region and distance of indexed data point j."""
        return int(self.labels[j]), float(self.nearest_dist[j])

    def nearest(self, x: FloatArray) -> tuple[int, float]:
        """Nearest representing point of an arbitrary query point."""
        point = np.asarray(x, dtype=np.float64)
        if point.shape != (self.representing.shape[1],):
            raise DimensionMismatchError(
                f"query point shape {point.shape} does not match dimension "
                f"{self.representing.shape[1]}"
            )
        dists = pairwise_sq(point[None, :], self.representing)[0]
        i = int(np.argmin(dists))
        return i, float(dists[i])

    def nearest_many(self, xs: FloatArray) -> tuple[IntArray, FloatArray]:
        dists = pairwise_sq(np.asarray(xs, dtype=np.float64), self.representing)
        idx = np.argmin(dists, axis=1)
        return idx.astype(np.int64), dists[np.arange(dists.shape[0]), idx]


def build_voronoi_index(instance: Instance, representing: FloatArray) -> VoronoiIndex:
    """Label every data point with its nearest member of S."""
    if len(representing) == 0:
        raise ValueError("representing set must be nonempty")
    reps = as_points(representing).copy()
    if reps.shape[1] != instance.dim:
        raise DimensionMismatchError(
            f"representing set dimension {reps.shape[1]} != instance dimension {instance.dim}"
        )
    dists = pairwise_sq(instance.points, reps)
    # argmin returns the first minimum: lowest index wins ties
    labels = np.argmin(dists, axis=1).astype(np.int64)
    nearest = dists[np.arange(instance.n), labels]
    counts = np.bincount(labels, minlength=reps.shape[0]).astype(np.int64)
    gaps = pairwise_sq(reps, reps)
    for array in (reps, labels, nearest, counts, gaps):
        array.setflags(write=False)
    return VoronoiIndex(
        representing=reps,
        labels=labels,
        nearest_dist=nearest,
        per_region_count=counts,
        voronoi_cost=float(nearest.sum()),
        gaps=gaps,
    )


def dist_h(x: FloatArray, y: FloatArray, index: VoronoiIndex) -> float:
    """Routed distance through the nearest representing points of x and y."""
    px, dx = index.nearest(x)
    py, dy = index.nearest(y)
    return dx + float(index.gaps[px, py]) + dy


def snap_center(c: FloatArray, index: VoronoiIndex) -> tuple[int, float]:
    """Representing point a center collapses onto, and the distance saved per point."""
    return index.nearest(c)


def h_upper_bound_holds(x: FloatArray, c: FloatArray, index: VoronoiIndex) -> bool:
    """h(x, c) <= 11 d(x, c) + 12 d(x, pi(x))."""
    _, dx = index.nearest(x)
    lhs = dist_h(x, c, index)
    rhs = 11.0 * dist_d(x, c) + 12.0 * dx
    return lhs <= rhs + REL_TOL * max(lhs, rhs)


def h_tables(index: VoronoiIndex, locations: FloatArray) -> tuple[FloatArray, IntArray]:
    """h(x, c) for every data point x and every location c, real and fixed point.

    The fixed-point table is the sum of the three separately scaled terms, so
    it agrees exactly with any formulation that aggregates points per region.
    """
    regions, snap = index.nearest_many(as_points(locations))
    real = (
        index.nearest_dist[:, None]
        + index.gaps[index.labels][:, regions]
        + snap[None, :]
    )
    scaled = (
        index.scaled_nearest[:, None]
        + index.scaled_gaps[index.labels][:, regions]
        + scale_costs(snap)[None, :]
    )
    return real, scaled


def evaluate_cost_h(
    instance: Instance, partition: Partition, index: VoronoiIndex
) -> tuple[float, int]:
    """cost_H of a partition: sum of h(x, center of x), real and fixed point."""
    if partition.labels.shape[0] != instance.n or index.n != instance.n:
        raise DimensionMismatchError("partition, index and instance disagree on n")
    real, scaled = h_tables(index, partition.centers)
    rows = np.arange(instance.n)
    picked = scaled[rows, partition.labels]
    return float(real[rows, partition.labels].sum()), int(picked.sum(dtype=object))
