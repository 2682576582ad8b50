"""Core value types shared by every module.

Points are float64 numpy arrays; a point set is an ``(n, d)`` array. All types
are frozen and their arrays are marked read-only so they can be handed to
worker processes and threads without copying.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from hckm.errors import DimensionMismatchError
from hckm.types import FloatArray, IntArray


class Feasibility(str, Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _positive_int(name: str, value: object) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    if int(value) < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def as_point(coords: Iterable[float] | np.ndarray) -> FloatArray:
    """Coerce coordinates to a finite 1-D float64 array."""
    point = np.asarray(list(coords) if not isinstance(coords, np.ndarray) else coords,
                       dtype=np.float64)
    if point.ndim != 1 or point.size == 0:
        raise DimensionMismatchError(f"a point must be a non-empty vector, got shape {point.shape}")
    if not np.all(np.isfinite(point)):
        raise ValueError("point coordinates must be finite")
    return point


def as_points(rows: Sequence[Sequence[float]] | np.ndarray) -> FloatArray:
    """Coerce a point set to a finite ``(n, d)`` float64 array."""
    points = np.asarray(rows, dtype=np.float64)
    if points.ndim == 1 and points.size:
        points = points.reshape(1, -1)
    if points.ndim != 2 or points.shape[0] == 0 or points.shape[1] == 0:
        raise DimensionMismatchError(f"expected an (n, d) point set, got shape {points.shape}")
    if not np.all(np.isfinite(points)):
        raise ValueError("point coordinates must be finite")
    return points


@dataclass(frozen=True)
class Instance:
    """Data set X with cluster count k and uniform capacity u."""

    points: FloatArray
    k: int
    u: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", _frozen(as_points(self.points).copy()))
        object.__setattr__(self, "k", _positive_int("k", self.k))
        object.__setattr__(self, "u", _positive_int("u", self.u))

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])


@dataclass(frozen=True)
class Partition:
    """Point labels in ``[0, k)`` and one center per cluster.

    Clusters may be empty; their center is kept as given.
    """

    labels: IntArray
    centers: FloatArray

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels, dtype=np.int64).copy()
        centers = as_points(self.centers).copy()
        if labels.ndim != 1:
            raise DimensionMismatchError("labels must be a 1-D sequence")
        if labels.size and (labels.min() < 0 or labels.max() >= centers.shape[0]):
            raise ValueError(f"labels must lie in [0, {centers.shape[0]})")
        object.__setattr__(self, "labels", _frozen(labels))
        object.__setattr__(self, "centers", _frozen(centers))

    @property
    def k(self) -> int:
        return int(self.centers.shape[0])

    def sizes(self) -> IntArray:
        return np.bincount(self.labels, minlength=self.k).astype(np.int64)

    def respects_capacity(self, u: int) -> bool:
        return bool(np.all(self.sizes() <= u))

    def members(self, cluster: int) -> IntArray:
        return np.flatnonzero(self.labels == cluster)

    def with_centers(self, centers: FloatArray) -> Partition:
        return Partition(self.labels, centers)


@dataclass(frozen=True)
class CostReport:
    cost_d: float
    # defined only relative to a representing set
    cost_h: float | None = None
    cost_h_scaled: int | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {"cost_d": self.cost_d, "cost_h": self.cost_h}
