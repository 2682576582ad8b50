"""Cost ratio of a representing set against the uncapacitated optimum."""

from __future__ import annotations

import math

from hckm.core.models import Instance
from hckm.geometry.voronoi import build_voronoi_index
from hckm.types import FloatArray


def measure_lambda1(instance: Instance, representing: FloatArray, oracle_opt_km: float) -> float:
    """cost_D(S) / opt_KM; inf when only the optimum is zero, 1 when both are."""
    if oracle_opt_km < 0:
        raise ValueError(f"optimum must be nonnegative, got {oracle_opt_km}")
    cost = build_voronoi_index(instance, representing).voronoi_cost
    if oracle_opt_km == 0:
        return 1.0 if cost == 0 else math.inf
    return cost / oracle_opt_km
