"""Distributions of k center copies over the representing set.

A composition is a count vector over the |S| slots summing to k. The stream
order is lexicographic in the multiset of slot indices (equivalently: counts[0]
descending, then counts[1] descending, ...), so for three slots and k = 2 it is
(2,0,0), (1,1,0), (1,0,1), (0,2,0), (0,1,1), (0,0,2). Ranks index that order
and let parallel workers start anywhere in the stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate
from typing import Iterator

import numpy as np

from hckm.types import FloatArray


@dataclass(frozen=True)
class Composition:
    counts: tuple[int, ...]

    @property
    def k(self) -> int:
        return sum(self.counts)

    def slots(self) -> tuple[int, ...]:
        """Slots holding at least one copy, ascending."""
        return tuple(i for i, c in enumerate(self.counts) if c)

    def multiset(self) -> tuple[int, ...]:
        """Slot index of every copy, ascending; the stream's sort key."""
        return tuple(i for i, c in enumerate(self.counts) for _ in range(c))

    def centers(self, representing: FloatArray) -> FloatArray:
        """C^p: counts[i] copies of s_i, in slot order."""
        return np.asarray(representing, dtype=np.float64)[list(self.multiset())]

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.counts) + ")"


def pruning_cap(n: int, k: int, u: int) -> int:
    """More than ceil(n/u) copies at one location only add unusable capacity."""
    return max(1, min(k, -(-n // u)))


@lru_cache(maxsize=32)
def _ways_table(slots: int, total: int, cap: int) -> tuple[tuple[int, ...], ...]:
    """``table[s][t]``: vectors of length s with entries in [0, cap] summing to t.

    One row per slot count, each a windowed prefix sum of the previous row.
    """
    row = [1] + [0] * total
    table = [tuple(row)]
    for _ in range(slots):
        prefix = list(accumulate(row, initial=0))
        row = [prefix[t + 1] - prefix[max(0, t - cap)] for t in range(total + 1)]
        table.append(tuple(row))
    return tuple(table)


def count_compositions(size: int, k: int, per_slot_cap: int) -> int:
    """Exact length of ``enumerate_compositions(size, k, per_slot_cap)``."""
    if size < 1 or k < 1:
        return 0
    return _ways_table(size, k, min(per_slot_cap, k))[size][k]


def count_unpruned(size: int, k: int) -> int:
    """Stars and bars: C(size + k - 1, k)."""
    return math.comb(size + k - 1, k)


def _first_fill(counts: list[int], start: int, total: int, cap: int) -> None:
    for i in range(start, len(counts)):
        take = min(cap, total)
        counts[i] = take
        total -= take


def unrank(rank: int, size: int, k: int, per_slot_cap: int) -> Composition:
    """Composition at position ``rank`` of the stream."""
    cap = min(per_slot_cap, k)
    total = count_compositions(size, k, cap)
    if not 0 <= rank < total:
        raise IndexError(f"rank {rank} outside [0, {total})")
    ways = _ways_table(size, k, cap)
    counts = [0] * size
    remaining = k
    for i in range(size - 1):
        for c in range(min(cap, remaining), -1, -1):
            block = ways[size - i - 1][remaining - c]
            if rank < block:
                counts[i] = c
                remaining -= c
                break
            rank -= block
    counts[-1] = remaining
    return Composition(tuple(counts))


def _advance(counts: list[int], cap: int) -> bool:
    """Step to the next composition in place; False at the end of the stream."""
    size = len(counts)
    suffix = counts[-1]
    for i in range(size - 2, -1, -1):
        if counts[i] > 0 and suffix + 1 <= (size - i - 1) * cap:
            counts[i] -= 1
            _first_fill(counts, i + 1, suffix + 1, cap)
            return True
        suffix += counts[i]
    return False


def enumerate_compositions(
    size: int,
    k: int,
    per_slot_cap: int,
    start: int = 0,
    stop: int | None = None,
) -> Iterator[Composition]:
    """Stream every composition of k over ``size`` slots with entries <= cap.

    ``start``/``stop`` select a contiguous rank range; the first element is
    unranked and the rest follow by successor steps, so memory stays constant.
    """
    if size < 1 or k < 1:
        return
    cap = min(per_slot_cap, k)
    total = count_compositions(size, k, cap)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    counts = list(unrank(start, size, k, cap).counts)
    for _ in range(stop - start):
        yield Composition(tuple(counts))
        if not _advance(counts, cap):
            break


def chunk_ranges(total: int, chunks: int) -> list[tuple[int, int]]:
    """Split ``[0, total)`` into at most ``chunks`` contiguous, nearly equal ranges."""
    chunks = max(1, min(chunks, total))
    if total == 0:
        return []
    bounds = [total * i // chunks for i in range(chunks + 1)]
    return [(bounds[i], bounds[i + 1]) for i in range(chunks) if bounds[i] < bounds[i + 1]]
