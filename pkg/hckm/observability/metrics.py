"""In-process counters for one composition sweep."""

from __future__ import annotations

import time
from dataclasses import dataclass, field


@dataclass
class SweepMetrics:
    compositions_total: int = 0
    compositions_unpruned: int = 0
    compositions_evaluated: int = 0
    chunks: int = 0
    chunk_latencies: list[int] = field(default_factory=list)
    _start_time: float = field(default_factory=time.monotonic)

    def record_chunk(self, evaluated: int, latency_ms: int = 0) -> None:
        self.chunks += 1
        self.compositions_evaluated += evaluated
        self.chunk_latencies.append(latency_ms)

    def progress(self) -> float:
        if not self.compositions_total:
            return 1.0
        return self.compositions_evaluated / self.compositions_total

    def summary(self) -> dict:
        avg_latency = (
            sum(self.chunk_latencies) / len(self.chunk_latencies) if self.chunk_latencies else 0
        )
        return {
            "compositions_total": self.compositions_total,
            "compositions_unpruned": self.compositions_unpruned,
            "compositions_evaluated": self.compositions_evaluated,
            "chunks": self.chunks,
            "avg_chunk_ms": int(avg_latency),
            "elapsed_ms": int((time.monotonic() - self._start_time) * 1000),
        }
