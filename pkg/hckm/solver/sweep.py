"""Composition sweep: region-level H cost of every C^p, keeping the argmin.

The stream is cut into contiguous rank ranges; every range reports its own
best (cost, rank) and the reduce keeps the smallest pair, so ties always go to
the earliest composition in stream order whatever the worker count.
"""

from __future__ import annotations

import logging
import signal
import threading
import time
from concurrent.futures import FIRST_COMPLETED, Future, ProcessPoolExecutor, wait
from dataclasses import dataclass
from typing import Callable

from hckm.compositions import Composition, chunk_ranges, enumerate_compositions
from hckm.geometry.voronoi import VoronoiIndex
from hckm.observability.metrics import SweepMetrics
from hckm.transport.assign import assign_regions_h

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[int], None]


@dataclass(frozen=True)
class ChunkBest:
    start: int
    evaluated: int
    best_scaled: int | None = None
    best_rank: int = -1
    best_counts: tuple[int, ...] = ()
    cancelled: bool = False

    def key(self) -> tuple[int, int]:
        return (self.best_scaled, self.best_rank)  # type: ignore[return-value]


def evaluate_chunk(
    index: VoronoiIndex,
    u: int,
    k: int,
    cap: int,
    start: int,
    stop: int,
    cancel: threading.Event | None = None,
    progress_every: int = 0,
    on_progress: ProgressCallback | None = None,
) -> ChunkBest:
    best_scaled: int | None = None
    best_rank = -1
    best_counts: tuple[int, ...] = ()
    evaluated = 0
    for offset, composition in enumerate(enumerate_compositions(index.size, k, cap, start, stop)):
        if cancel is not None and cancel.is_set():
            return ChunkBest(start, evaluated, best_scaled, best_rank, best_counts, cancelled=True)
        cost = assign_regions_h(index, composition, u).cost_h_scaled
        if best_scaled is None or cost < best_scaled:
            best_scaled, best_rank, best_counts = cost, start + offset, composition.counts
        evaluated += 1
        if progress_every and on_progress is not None and evaluated % progress_every == 0:
            on_progress(evaluated)
    return ChunkBest(start, evaluated, best_scaled, best_rank, best_counts)


@dataclass(frozen=True)
class SweepOutcome:
    composition: Composition | None
    cost_h_scaled: int | None
    rank: int
    evaluated: int
    complete: bool


def _reduce(results: list[ChunkBest]) -> tuple[ChunkBest | None, int, bool]:
    evaluated = sum(r.evaluated for r in results)
    complete = not any(r.cancelled for r in results)
    scored = [r for r in results if r.best_scaled is not None]
    return (min(scored, key=ChunkBest.key) if scored else None), evaluated, complete


def sweep(
    index: VoronoiIndex,
    u: int,
    k: int,
    cap: int,
    metrics: SweepMetrics,
    workers: int = 1,
    cancel: threading.Event | None = None,
    progress_every: int = 0,
) -> SweepOutcome:
    total = metrics.compositions_total
    if workers <= 1:
        results = [_run_sequential(index, u, k, cap, total, metrics, cancel, progress_every)]
    else:
        results = _run_parallel(index, u, k, cap, total, metrics, workers, cancel)

    best, evaluated, complete = _reduce(results)
    if best is None and total > 0:
        # a sweep cancelled before scoring anything still answers with the head of the stream
        best = evaluate_chunk(index, u, k, cap, 0, 1)
        metrics.record_chunk(best.evaluated)
        evaluated += best.evaluated
    if best is None:
        return SweepOutcome(None, None, -1, evaluated, complete)
    return SweepOutcome(
        composition=Composition(best.best_counts),
        cost_h_scaled=best.best_scaled,
        rank=best.best_rank,
        evaluated=evaluated,
        complete=complete and evaluated == total,
    )


def _run_sequential(index, u, k, cap, total, metrics, cancel, progress_every) -> ChunkBest:
    def report(done: int) -> None:
        logger.info("sweep progress: %d/%d compositions", done, total)

    started = time.monotonic()
    result = evaluate_chunk(index, u, k, cap, 0, total, cancel, progress_every, report)
    metrics.record_chunk(result.evaluated, int((time.monotonic() - started) * 1000))
    return result


def _ignore_interrupts() -> None:
    """Workers leave Ctrl-C to the parent, which cancels through the event."""
    signal.signal(signal.SIGINT, signal.SIG_IGN)


def _run_parallel(index, u, k, cap, total, metrics, workers, cancel) -> list[ChunkBest]:
    ranges = chunk_ranges(total, workers * 4)
    results: list[ChunkBest] = []
    started: dict[Future, float] = {}

    def collect(future: Future) -> None:
        result = future.result()
        results.append(result)
        metrics.record_chunk(result.evaluated, int((time.monotonic() - started[future]) * 1000))

    with ProcessPoolExecutor(max_workers=workers, initializer=_ignore_interrupts) as pool:
        for start, stop in ranges:
            future = pool.submit(evaluate_chunk, index, u, k, cap, start, stop)
            started[future] = time.monotonic()
        pending = set(started)
        while pending:
            if cancel is not None and cancel.is_set():
                # chunks already handed to a worker cannot be withdrawn
                running = {future for future in pending if not future.cancel()}
                logger.warning(
                    "sweep cancelled: %d chunks dropped, waiting on %d running",
                    len(pending) - len(running), len(running),
                )
                for future in wait(running).done:
                    collect(future)
                break
            done, pending = wait(pending, timeout=0.5, return_when=FIRST_COMPLETED)
            for future in done:
                collect(future)
                logger.info(
                    "sweep progress: %d/%d compositions (%.0f%%, %d chunks left)",
                    metrics.compositions_evaluated, total, 100 * metrics.progress(), len(pending),
                )
    return results
