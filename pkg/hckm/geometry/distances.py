"""Squared Euclidean distance and its relaxed triangle inequalities."""

from __future__ import annotations

import numpy as np

from hckm.errors import DimensionMismatchError
from hckm.types import FloatArray

# relative slack for the inequality checks; pure sums of squares, no iteration
REL_TOL = 1e-9


def _pair(x: FloatArray, y: FloatArray) -> tuple[FloatArray, FloatArray]:
    a = np.asarray(x, dtype=np.float64)
    b = np.asarray(y, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def dist_d(x: FloatArray, y: FloatArray) -> float:
    """d(x, y) = ||x - y||^2."""
    a, b = _pair(x, y)
    diff = a - b
    return float(diff @ diff)


def pairwise_sq(xs: FloatArray, ys: FloatArray) -> FloatArray:
    """(len(xs), len(ys)) table of squared distances.

    Uses the explicit difference rather than the ||x||^2 - 2x.y + ||y||^2
    expansion so that coincident points come out as exactly zero.
    """
    a = np.asarray(xs, dtype=np.float64)
    b = np.asarray(ys, dtype=np.float64)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[1]:
        raise DimensionMismatchError(f"dimension mismatch: {a.shape} vs {b.shape}")
    diff = a[:, None, :] - b[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def _leq(lhs: float, rhs: float) -> bool:
    return lhs <= rhs + REL_TOL * max(abs(lhs), abs(rhs))


def check_extended_triangle(i: FloatArray, j: FloatArray, k: FloatArray) -> bool:
    """d(i, j) <= 2 (d(i, k) + d(j, k))."""
    return _leq(dist_d(i, j), 2.0 * (dist_d(i, k) + dist_d(j, k)))


def check_four_point(
    i: FloatArray, l: FloatArray, k: FloatArray, j: FloatArray  # noqa: E741
) -> bool:
    """d(i, j) <= 3 (d(i, l) + d(l, k) + d(k, j))."""
    return _leq(dist_d(i, j), 3.0 * (dist_d(i, l) + dist_d(l, k) + dist_d(k, j)))
