"""Turn optimal road levels into an explicit matching.

The interval graph has one node per roadmap vertex, S point and T point,
numbered in that order: vertices ``0..n-1``, S points ``n..n+M-1`` and T
points ``n+M..n+2M-1``. Each empty stretch of road between two consecutive
nodes becomes an edge carrying ``|h|`` matches, where ``h = F + z_r`` is the
signed match count across that stretch.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .errors import CycleDetected, EmptyQueueAtT, InvariantViolation
from .profiles import CcfpInstance
from .roadmap import MatchingInstance, pair_distances


@dataclass(frozen=True, eq=False)
class IntervalGraph:
    n_vertices: int
    M: int
    tails: np.ndarray
    heads: np.ndarray
    weights: np.ndarray
    lengths: np.ndarray

    @property
    def n_nodes(self) -> int:
        return self.n_vertices + 2 * self.M

    @property
    def n_edges(self) -> int:
        return len(self.tails)

    def s_node(self, i: int) -> int:
        return self.n_vertices + i

    def t_node(self, j: int) -> int:
        return self.n_vertices + self.M + j

    def label(self, node: int) -> tuple[str, int]:
        """``('V', k)``, ``('S', i)`` or ``('T', j)`` for a node number."""
        if node < self.n_vertices:
            return ("V", node)
        if node < self.n_vertices + self.M:
            return ("S", node - self.n_vertices)
        return ("T", node - self.n_vertices - self.M)

    def edges(self) -> list[tuple[int, int, int, float]]:
        return list(
            zip(
                self.tails.tolist(),
                self.heads.tolist(),
                self.weights.tolist(),
                self.lengths.tolist(),
            )
        )

    def total_weight(self) -> float:
        """Sum of weight times length over all edges."""
        return float(np.dot(self.weights.astype(np.float64), self.lengths))

    def out_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Outgoing edge ids grouped by tail, stable in edge order."""
        order = np.argsort(self.tails, kind="stable")
        counts = np.bincount(self.tails, minlength=self.n_nodes)
        offsets = np.concatenate(([0], np.cumsum(counts)))
        return offsets, order


@dataclass(frozen=True)
class Matching:
    """``pairs[k] = (i, j)`` matches ``S[i]`` with ``T[j]``."""

    pairs: list[tuple[int, int]]
    cost: float

    def permutation(self) -> list[int]:
        perm = [-1] * len(self.pairs)
        for i, j in self.pairs:
            perm[i] = j
        return perm


def build_interval_graph(instance: CcfpInstance, Z) -> IntervalGraph:
    rm = instance.roadmap
    n, M = rm.n_vertices, instance.M
    z = np.asarray(Z, dtype=np.int64)
    tails, heads, weights, lengths = [], [], [], []

    empty = np.ones(rm.n_roads, dtype=bool)
    for r, p in instance.profiles.items():
        empty[r] = False
        nodes = np.where(p.point_is_s, n + p.point_index, n + M + p.point_index)
        seq = np.concatenate(([rm.tails[r]], nodes, [rm.heads[r]]))
        h = p.F + z[r]
        keep = h != 0
        fwd = h > 0
        lo, hi = seq[:-1], seq[1:]
        tails.append(np.where(fwd, lo, hi)[keep])
        heads.append(np.where(fwd, hi, lo)[keep])
        weights.append(np.abs(h)[keep])
        lengths.append(np.diff(p.Y)[keep])

    # roads without points: one interval spanning the road
    er = np.flatnonzero(empty & (z != 0))
    ze = z[er]
    tails.append(np.where(ze > 0, rm.tails[er], rm.heads[er]))
    heads.append(np.where(ze > 0, rm.heads[er], rm.tails[er]))
    weights.append(np.abs(ze))
    lengths.append(rm.lengths[er])

    return IntervalGraph(
        n,
        M,
        np.concatenate(tails).astype(np.int64),
        np.concatenate(heads).astype(np.int64),
        np.concatenate(weights).astype(np.int64),
        np.concatenate(lengths).astype(np.float64),
    )


def topological_order(g: IntervalGraph) -> list[int]:
    """Kahn's in-degree peeling; ready nodes leave in increasing node number."""
    N = g.n_nodes
    indeg = np.bincount(g.heads, minlength=N).tolist()
    offsets, order = g.out_csr()
    offsets = offsets.tolist()
    out_heads = g.heads[order].tolist()
    ready = [u for u in range(N) if indeg[u] == 0]
    heapq.heapify(ready)
    result: list[int] = []
    while ready:
        u = heapq.heappop(ready)
        result.append(u)
        for k in range(offsets[u], offsets[u + 1]):
            v = out_heads[k]
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(ready, v)
    if len(result) != N:
        raise CycleDetected(
            f"interval graph has a directed cycle ({N - len(result)} nodes unordered)"
        )
    return result


def construct_matching(g: IntervalGraph, order: list[int]) -> Matching:
    """Walk the nodes in topological order, carrying collected S points.

    Each node owns a FIFO queue of S indices stored as a singly linked list
    (``nxt``), so handing a whole queue downstream is O(1) and only splits
    cost time proportional to the number of elements moved.
    """
    n, M, N = g.n_vertices, g.M, g.n_nodes
    offsets, eorder = g.out_csr()
    offsets = offsets.tolist()
    e_heads = g.heads[eorder].tolist()
    e_weights = g.weights[eorder].tolist()

    first = [-1] * N
    last = [-1] * N
    size = [0] * N
    nxt = [-1] * M
    pairs: list[tuple[int, int]] = []
    s_end = n + M

    for v in order:
        if n <= v < s_end:
            i = v - n
            if size[v]:
                nxt[last[v]] = i
            else:
                first[v] = i
            last[v] = i
            size[v] += 1
        elif v >= s_end:
            if size[v] == 0:
                raise EmptyQueueAtT(f"no collected S point available at T point {v - s_end}")
            i = first[v]
            first[v] = nxt[i]
            size[v] -= 1
            pairs.append((i, v - s_end))

        for k in range(offsets[v], offsets[v + 1]):
            w = e_heads[k]
            wt = e_weights[k]
            if wt > size[v]:
                raise InvariantViolation(
                    f"node {v} holds {size[v]} points but edge to {w} needs {wt}"
                )
            head = first[v]
            if wt == size[v]:
                tail = last[v]
                rest = -1
            else:
                tail = head
                for _ in range(wt - 1):
                    tail = nxt[tail]
                rest = nxt[tail]
            if size[w]:
                nxt[last[w]] = head
            else:
                first[w] = head
            last[w] = tail
            nxt[tail] = -1
            size[w] += wt
            first[v] = rest
            size[v] -= wt
        if size[v]:
            raise InvariantViolation(f"node {v} left {size[v]} collected points behind")

    if len(pairs) != M:
        raise InvariantViolation(f"produced {len(pairs)} pairs, expected {M}")
    pairs.sort()
    return Matching(pairs, g.total_weight())


def audit_matching(instance: MatchingInstance, m: Matching) -> float:
    """Recompute the matching cost from roadmap distances alone."""
    return float(match_distances(instance, m).sum())


def match_distances(instance: MatchingInstance, m: Matching) -> np.ndarray:
    if not m.pairs:
        return np.zeros(0)
    idx = np.asarray(m.pairs, dtype=np.int64)
    i, j = idx[:, 0], idx[:, 1]
    return pair_distances(
        instance.roadmap,
        instance.s_roads[i],
        instance.s_y[i],
        instance.t_roads[j],
        instance.t_y[j],
    )


def path_counts(g: IntervalGraph, order: list[int] | None = None) -> np.ndarray:
    """``counts[u, v]`` = number of distinct directed paths from u to v (u != v).

    Dense O(N * (N + E)); meant for certifying small graphs.
    """
    if order is None:
        order = topological_order(g)
    N = g.n_nodes
    pos = np.empty(N, dtype=np.int64)
    pos[order] = np.arange(N)
    counts = np.zeros((N, N), dtype=object)
    edges = sorted(
        zip(g.tails.tolist(), g.heads.tolist()), key=lambda e: pos[e[0]]
    )
    # process tails in topological order so counts[:, tail] is final
    for a, b in edges:
        counts[:, b] += counts[:, a]
        counts[a, b] += 1
    return counts


def is_multitree(g: IntervalGraph) -> bool:
    """At most one directed path between any ordered pair of nodes."""
    return bool((path_counts(g) <= 1).all())
