"""Transportation problem and flow result records."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from hckm.core.scaling import scale_costs
from hckm.errors import TransportationInfeasibleError
from hckm.types import FloatArray, IntArray


def _positive_ints(name: str, values) -> IntArray:
    array = np.asarray(values)
    if array.ndim != 1 or array.size == 0:
        raise ValueError(f"{name} must be a nonempty 1-D sequence")
    if not np.issubdtype(array.dtype, np.integer) or np.any(array < 1):
        raise ValueError(f"{name} must be positive integers")
    return array.astype(np.int64)


@dataclass(frozen=True)
class AssignmentProblem:
    """Supplies on sources, capacities on sinks, per-unit cost table.

    ``scaled`` is the fixed-point cost table the solver works on; pass it in
    when the caller already holds the scaled values so that several
    formulations share identical integers.
    """

    supplies: IntArray
    demands_cap: IntArray
    cost: FloatArray
    scaled: IntArray | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        supplies = _positive_ints("supplies", self.supplies)
        caps = _positive_ints("demands_cap", self.demands_cap)
        cost = np.asarray(self.cost, dtype=np.float64)
        if cost.shape != (supplies.size, caps.size):
            raise ValueError(
                f"cost table shape {cost.shape} != ({supplies.size}, {caps.size})"
            )
        if int(supplies.sum()) > int(caps.sum()):
            raise TransportationInfeasibleError(
                f"total supply {int(supplies.sum())} exceeds total capacity {int(caps.sum())}"
            )
        scaled = (
            scale_costs(cost)
            if self.scaled is None
            else np.asarray(self.scaled, dtype=np.int64)
        )
        if scaled.shape != cost.shape:
            raise ValueError("scaled cost table must match the cost table's shape")
        object.__setattr__(self, "supplies", supplies)
        object.__setattr__(self, "demands_cap", caps)
        object.__setattr__(self, "cost", cost)
        object.__setattr__(self, "scaled", scaled)

    @property
    def shape(self) -> tuple[int, int]:
        return int(self.supplies.size), int(self.demands_cap.size)

    @property
    def total_supply(self) -> int:
        return int(self.supplies.sum())


@dataclass(frozen=True)
class FlowResult:
    flow: IntArray
    total_cost: float
    total_scaled: int

    def row_sums(self) -> IntArray:
        return self.flow.sum(axis=1)

    def column_sums(self) -> IntArray:
        return self.flow.sum(axis=0)

    def is_integral(self) -> bool:
        return np.issubdtype(self.flow.dtype, np.integer) and bool(np.all(self.flow >= 0))
