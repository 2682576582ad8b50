"""Solution persistence as JSON."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, Field

from hckm.core.cost import evaluate_cost_d
from hckm.core.models import Instance, Partition
from hckm.errors import HCKMError
from hckm.solver.driver import Solution

logger = logging.getLogger(__name__)

# depends on the worker count and the clock, not on the instance
_RUN_DEPENDENT: dict[str, Any] = {
    "wall_time_ms": True,
    "config": True,
    "enumeration": {"chunks": True, "avg_chunk_ms": True},
}


class SubroutineStatsModel(BaseModel):
    name: str
    size: int
    cost_d: float
    seed: int


class EnumerationModel(BaseModel):
    total: int
    unpruned: int
    evaluated: int
    per_slot_cap: int
    chunks: int = 0
    avg_chunk_ms: int = 0


class SolutionDocument(BaseModel):
    """Field order is the on-disk key order."""

    labels: list[int]
    centers: list[list[float]]
    cost_d: float
    cost_h: float | None
    cost_d_before_recenter: float
    cost_h_before_recenter: float | None
    winning_composition: list[int]
    compositions_evaluated: int
    enumeration: EnumerationModel
    subroutine_stats: SubroutineStatsModel
    representing_set: list[list[float]]
    advertised_bound: float
    complete: bool
    lambda1: float | None = None
    oracle_opt: float | None = None
    certified_ratio: float | None = None
    wall_time_ms: int = 0
    config: dict[str, Any] = Field(default_factory=dict)

    def partition(self) -> Partition:
        return Partition(np.asarray(self.labels), np.asarray(self.centers))

    def deterministic_view(self) -> dict[str, Any]:
        """Everything except timing, chunking and the config echo."""
        return self.model_dump(mode="json", exclude=_RUN_DEPENDENT)


def solution_document(solution: Solution, config: dict[str, Any] | None = None) -> SolutionDocument:
    stats = solution.subroutine_stats
    enum = solution.enumeration
    return SolutionDocument(
        labels=solution.partition.labels.tolist(),
        centers=solution.partition.centers.tolist(),
        cost_d=solution.cost_after_recenter.cost_d,
        cost_h=solution.cost_after_recenter.cost_h,
        cost_d_before_recenter=solution.cost_before_recenter.cost_d,
        cost_h_before_recenter=solution.cost_before_recenter.cost_h,
        winning_composition=list(solution.winning_composition.counts),
        compositions_evaluated=solution.compositions_evaluated,
        enumeration=EnumerationModel(
            total=enum.total, unpruned=enum.unpruned, evaluated=enum.evaluated,
            per_slot_cap=enum.per_slot_cap, chunks=enum.chunks, avg_chunk_ms=enum.avg_chunk_ms,
        ),
        subroutine_stats=SubroutineStatsModel(
            name=stats.name, size=stats.size, cost_d=stats.cost_d, seed=stats.seed,
        ),
        representing_set=np.asarray(solution.representing).tolist(),
        advertised_bound=solution.advertised_bound,
        complete=solution.complete,
        lambda1=solution.lambda1,
        oracle_opt=solution.oracle_opt,
        certified_ratio=solution.certified_ratio,
        wall_time_ms=int(solution.wall_time * 1000),
        config=config or {},
    )


def emit_solution(solution: Solution, path: str | Path,
                  config: dict[str, Any] | None = None) -> SolutionDocument:
    document = solution_document(solution, config)
    target = Path(path)
    try:
        target.write_text(document.model_dump_json(indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise HCKMError(f"cannot write solution to {target}: {exc.strerror}") from None
    logger.info("wrote solution to %s", target)
    return document


def load_solution(path: str | Path) -> SolutionDocument:
    return SolutionDocument.model_validate_json(Path(path).read_text(encoding="utf-8"))


def recompute_cost_d(points: np.ndarray, document: SolutionDocument) -> float:
    """cost_D from the raw labels and centers of an emitted solution."""
    partition = document.partition()
    k = partition.k
    instance = Instance(points, k=k, u=max(1, int(partition.sizes().max(initial=1))))
    return evaluate_cost_d(instance, partition)
