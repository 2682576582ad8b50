"""D^2 overseeding followed by Lloyd rounds."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from hckm.core.models import Instance
from hckm.geometry.distances import pairwise_sq
from hckm.subroutines.base import KMSubroutine, SubroutineConfig
from hckm.types import FloatArray

logger = logging.getLogger(__name__)


@dataclass
class OverseedResult:
    representing: FloatArray
    seed_indices: list[int]
    # Voronoi cost of the seeds, then after every Lloyd round
    cost_history: list[float] = field(default_factory=list)


def d2_seed(points: FloatArray, m: int, rng: np.random.Generator) -> list[int]:
    """Pick m distinct point indices: first uniform, then proportional to d^2.

    Once every remaining point coincides with a chosen one, further picks are
    uniform over the unchosen indices.
    """
    n = points.shape[0]
    chosen = [int(rng.integers(n))]
    taken = np.zeros(n, dtype=bool)
    taken[chosen[0]] = True
    closest = pairwise_sq(points, points[chosen[0]][None, :])[:, 0]
    while len(chosen) < m:
        total = float(closest.sum())
        if total > 0:
            cumulative = np.cumsum(closest)
            idx = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
            idx = min(idx, n - 1)
            if taken[idx]:
                # only reachable through rounding at the top of the cumulative sum
                idx = int(np.flatnonzero(~taken & (closest > 0))[-1])
        else:
            idx = int(rng.choice(np.flatnonzero(~taken)))
        chosen.append(idx)
        taken[idx] = True
        np.minimum(closest, pairwise_sq(points, points[idx][None, :])[:, 0], out=closest)
    return chosen


def lloyd(
    points: FloatArray, centers: FloatArray, rounds: int
) -> tuple[FloatArray, list[float]]:
    """Assign-to-nearest then recenter; cells that capture nothing stay put."""
    centers = centers.copy()
    dists = pairwise_sq(points, centers)
    history = [float(dists.min(axis=1).sum())]
    for _ in range(rounds):
        labels = np.argmin(dists, axis=1)
        counts = np.bincount(labels, minlength=centers.shape[0])
        sums = np.zeros_like(centers)
        np.add.at(sums, labels, points)
        occupied = counts > 0
        updated = centers.copy()
        updated[occupied] = sums[occupied] / counts[occupied, None]
        if np.array_equal(updated, centers):
            break
        centers = updated
        dists = pairwise_sq(points, centers)
        history.append(float(dists.min(axis=1).sum()))
    return centers, history


class OverseedSubroutine(KMSubroutine):
    def fit(self, instance: Instance, config: SubroutineConfig) -> OverseedResult:
        m = config.target_size(instance.n, instance.k)
        rng = np.random.default_rng(config.rng_seed)
        seeds = d2_seed(instance.points, m, rng)
        centers, history = lloyd(instance.points, instance.points[seeds], config.lloyd_rounds)
        logger.info(
            "overseed: n=%d k=%d m=%d seed=%d rounds=%d cost %.6g -> %.6g",
            instance.n, instance.k, m, config.rng_seed, len(history) - 1,
            history[0], history[-1],
        )
        return OverseedResult(representing=centers, seed_indices=seeds, cost_history=history)

    def run(self, instance: Instance, config: SubroutineConfig) -> FloatArray:
        return self.fit(instance, config).representing

    def name(self) -> str:
        return "overseed"

    def description(self) -> str:
        return "D^2 seeding of O(k log 1/eps') centers refined by Lloyd rounds"
