"""Feasibility gate, centroids and the squared-Euclidean objective."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from hckm.core.models import Feasibility, Instance, Partition, as_points
from hckm.errors import DimensionMismatchError, EmptyClusterError
from hckm.types import FloatArray


def check_feasibility(instance: Instance) -> Feasibility:
    """Infeasible exactly when k > n or k·u < n."""
    if instance.k > instance.n or instance.k * instance.u < instance.n:
        return Feasibility.INFEASIBLE
    return Feasibility.FEASIBLE


def centroid(cluster: Sequence[Sequence[float]] | FloatArray) -> FloatArray:
    points = np.asarray(cluster, dtype=np.float64)
    if points.size == 0:
        raise EmptyClusterError()
    return as_points(points).mean(axis=0)


def evaluate_cost_d(instance: Instance, partition: Partition) -> float:
    """Sum over points of the squared distance to their cluster's center."""
    if partition.labels.shape[0] != instance.n:
        raise DimensionMismatchError(
            f"partition labels {partition.labels.shape[0]} points, instance has {instance.n}"
        )
    if partition.centers.shape[1] != instance.dim:
        raise DimensionMismatchError(
            f"center dimension {partition.centers.shape[1]} != instance dimension {instance.dim}"
        )
    diff = instance.points - partition.centers[partition.labels]
    return float(np.einsum("ij,ij->", diff, diff))


def _spread(points: FloatArray, center: FloatArray) -> float:
    diff = points - center
    return float(np.einsum("ij,ij->", diff, diff))


def recenter(instance: Instance, partition: Partition) -> Partition:
    """Move every nonempty cluster's center to its centroid; labels unchanged.

    A center already at the centroid up to rounding is left where it is, so the
    cost never goes up.
    """
    centers = np.array(partition.centers, dtype=np.float64)
    for cluster in range(partition.k):
        members = instance.points[partition.members(cluster)]
        if not members.size:
            continue
        candidate = members.mean(axis=0)
        if _spread(members, candidate) < _spread(members, centers[cluster]):
            centers[cluster] = candidate
    return partition.with_centers(centers)
