"""Min-cost flow by successive shortest augmenting paths.

The network is source -> one node per supply row -> one node per sink
column -> terminal. Dijkstra runs on reduced costs (Johnson potentials), which
stay nonnegative because every original cost is nonnegative and potentials are
advanced by the shortest-path distances after each augmentation. All arithmetic
is on the scaled integer costs, so the optimum is exact and the result is
integral.
"""

from __future__ import annotations

import heapq
import logging

import numpy as np

from hckm.core.scaling import unscale
from hckm.errors import TransportationInfeasibleError
from hckm.transport.problem import AssignmentProblem, FlowResult

logger = logging.getLogger(__name__)

_INF = float("inf")

# arc layout inside an adjacency list: [head, residual capacity, cost, reverse position]
_HEAD, _CAP, _COST, _REV = 0, 1, 2, 3


class _Network:
    def __init__(self, node_count: int) -> None:
        self.adj: list[list[list[int]]] = [[] for _ in range(node_count)]

    def add_arc(self, tail: int, head: int, cap: int, cost: int) -> tuple[int, int]:
        forward = [head, cap, cost, len(self.adj[head])]
        backward = [tail, 0, -cost, len(self.adj[tail])]
        self.adj[tail].append(forward)
        self.adj[head].append(backward)
        return tail, len(self.adj[tail]) - 1

    def shortest_paths(
        self, source: int, potential: list[int]
    ) -> tuple[list[float], list[tuple[int, int] | None]]:
        dist: list[float] = [_INF] * len(self.adj)
        parent: list[tuple[int, int] | None] = [None] * len(self.adj)
        dist[source] = 0
        heap = [(0, source)]
        while heap:
            d, node = heapq.heappop(heap)
            if d > dist[node]:
                continue
            base = potential[node]
            for pos, arc in enumerate(self.adj[node]):
                if arc[_CAP] <= 0:
                    continue
                head = arc[_HEAD]
                nd = d + arc[_COST] + base - potential[head]
                if nd < dist[head]:
                    dist[head] = nd
                    parent[head] = (node, pos)
                    heapq.heappush(heap, (nd, head))
        return dist, parent


def solve(problem: AssignmentProblem) -> FlowResult:
    """Minimum-cost integral flow saturating every supply."""
    rows, cols = problem.shape
    source, terminal = 0, rows + cols + 1
    net = _Network(rows + cols + 2)

    for a in range(rows):
        net.add_arc(source, 1 + a, int(problem.supplies[a]), 0)
    handles = np.empty((rows, cols), dtype=object)
    for a in range(rows):
        supply = int(problem.supplies[a])
        for b in range(cols):
            handles[a, b] = net.add_arc(1 + a, 1 + rows + b, supply, int(problem.scaled[a, b]))
    for b in range(cols):
        net.add_arc(1 + rows + b, terminal, int(problem.demands_cap[b]), 0)

    required = problem.total_supply
    potential = [0] * (rows + cols + 2)
    shipped = 0
    augmentations = 0
    while shipped < required:
        dist, parent = net.shortest_paths(source, potential)
        if dist[terminal] == _INF:
            raise TransportationInfeasibleError(
                f"no augmenting path after shipping {shipped} of {required} units"
            )
        for node, value in enumerate(dist):
            if value != _INF:
                potential[node] += int(value)

        bottleneck = required - shipped
        node = terminal
        while node != source:
            tail, pos = parent[node]
            bottleneck = min(bottleneck, net.adj[tail][pos][_CAP])
            node = tail
        node = terminal
        while node != source:
            tail, pos = parent[node]
            arc = net.adj[tail][pos]
            arc[_CAP] -= bottleneck
            net.adj[node][arc[_REV]][_CAP] += bottleneck
            node = tail
        shipped += bottleneck
        augmentations += 1

    flow = np.zeros((rows, cols), dtype=np.int64)
    for a in range(rows):
        supply = int(problem.supplies[a])
        for b in range(cols):
            tail, pos = handles[a, b]
            flow[a, b] = supply - net.adj[tail][pos][_CAP]

    total_scaled = int(sum(int(f) * int(c) for f, c in zip(flow.ravel(), problem.scaled.ravel())))
    total_cost = float(np.sum(flow * problem.cost))
    logger.debug(
        "transportation %dx%d solved: units=%d augmentations=%d cost=%.6g",
        rows, cols, required, augmentations, unscale(total_scaled),
    )
    return FlowResult(flow=flow, total_cost=total_cost, total_scaled=total_scaled)
