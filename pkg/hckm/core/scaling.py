"""Fixed-point conversion of real costs for exact flow arithmetic.

Costs are multiplied by 2**30 and rounded half-to-even. Every formulation
that claims exact agreement with another (point level vs region level, flow
vs exhaustive oracle) goes through ``scale_costs``. Flow totals and cost
sums are accumulated in Python ints, so only single table entries live in
int64.
"""

from __future__ import annotations

import numpy as np

from hckm.errors import CostScalingError
from hckm.types import IntArray

SCALE_BITS = 30
SCALE = 1 << SCALE_BITS
# an H table entry adds three scaled terms and must fit a signed 64-bit word
ENTRY_LIMIT = 1 << 61


def scale_costs(costs: np.ndarray) -> IntArray:
    """Scale a nonnegative cost array to int64; every entry must stay below 2**61."""
    values = np.asarray(costs, dtype=np.float64)
    if values.size == 0:
        return np.zeros(values.shape, dtype=np.int64)
    if not np.all(np.isfinite(values)) or np.any(values < 0):
        raise ValueError("costs must be finite and nonnegative")
    peak = float(values.max()) * SCALE
    if peak >= ENTRY_LIMIT:
        raise CostScalingError(f"peak scaled cost {peak:.3e}")
    return np.rint(values * SCALE).astype(np.int64)


def unscale(total: int) -> float:
    return total / SCALE
