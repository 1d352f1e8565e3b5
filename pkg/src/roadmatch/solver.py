"""Capacity-scaling solver for the roadmap convex cost flow problem.

Decision variable: one integer level ``z_r`` per road. A road behaves as an
uncapacitated arc from its tail to its head that receives ``b_r`` extra units
along the way, so conservation reads, for each vertex u::

    sum_{head(r)=u} (z_r + b_r) == sum_{tail(r)=u} z_r

Costs are the convex profiles ``C(z_r; r)``. Each Delta-phase keeps every
Delta-residual arc at nonnegative reduced cost and moves Delta units between
excess and deficit vertices along shortest paths.

Residual arc costs are total increments ``C(z +- Delta) - C(z)``, and
potentials are kept in the same units, so a potential carried over from the
2*Delta phase is halved at the start of the next one.
"""

from __future__ import annotations

import heapq
import math
from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np

from .errors import NegativeReducedCost, NoPath, UnbalancedSupply
from .profiles import CcfpInstance, eval_cost

FORWARD = 1
BACKWARD = -1

# relative to total roadmap length
REDUCED_COST_TOL = 1e-9


@dataclass
class SolverStats:
    phases: int = 0
    sp_calls: int = 0
    saturating_pushes: int = 0
    augmentations: int = 0
    deltas: list[int] = field(default_factory=list)
    # smallest reduced cost over all Delta-residual arcs at the end of each phase
    phase_min_reduced_cost: list[float] = field(default_factory=list)


class _Costs:
    """Flat per-road piece tables for fast scalar evaluation."""

    def __init__(self, instance: CcfpInstance):
        self.z_lo: list[int] = []
        self.n_levels: list[int] = []
        self.alpha: list[list[float]] = []
        self.beta: list[list[float]] = []
        for r in range(instance.roadmap.n_roads):
            p = instance.profile(r)
            self.z_lo.append(p.z_lo)
            self.n_levels.append(len(p.levels))
            self.alpha.append(p.alpha.tolist())
            self.beta.append(p.beta.tolist())

    def __call__(self, r: int, z: int) -> float:
        k = z - self.z_lo[r] + 1
        if k < 0:
            k = 0
        elif k > self.n_levels[r]:
            k = self.n_levels[r]
        return self.alpha[r][k] + self.beta[r][k] * z


class FlowState:
    """Mutable working state of one solve: levels, potentials, imbalances."""

    def __init__(self, instance: CcfpInstance):
        rm = instance.roadmap
        self.n = rm.n_vertices
        self.E = rm.n_roads
        self.tail: list[int] = rm.tails.tolist()
        self.head: list[int] = rm.heads.tolist()
        self.cost = _Costs(instance)
        self.z = [0] * self.E
        self.pi = [0.0] * self.n
        self.e: list[int] = instance.node_supply.tolist()
        self.tol = REDUCED_COST_TOL * max(rm.total_length, 1.0)
        # out-arcs per vertex as (road, direction, other end)
        self.out: list[list[tuple[int, int, int]]] = [[] for _ in range(self.n)]
        for r in range(self.E):
            a, b = self.tail[r], self.head[r]
            self.out[a].append((r, FORWARD, b))
            self.out[b].append((r, BACKWARD, a))

    def arc_ends(self, r: int, direction: int) -> tuple[int, int]:
        if direction == FORWARD:
            return self.tail[r], self.head[r]
        return self.head[r], self.tail[r]

    def arc_cost(self, r: int, direction: int, delta: int) -> float:
        z = self.z[r]
        return self.cost(r, z + direction * delta) - self.cost(r, z)

    def reduced_cost(self, r: int, direction: int, delta: int) -> float:
        u, v = self.arc_ends(r, direction)
        return self.arc_cost(r, direction, delta) - self.pi[u] + self.pi[v]

    def push(self, r: int, direction: int, delta: int) -> None:
        u, v = self.arc_ends(r, direction)
        self.z[r] += direction * delta
        self.e[u] -= delta
        self.e[v] += delta

    def min_reduced_cost(self, delta: int) -> float:
        best = math.inf
        for r in range(self.E):
            for direction in (FORWARD, BACKWARD):
                best = min(best, self.reduced_cost(r, direction, delta))
        return best


def shortest_path_with_potentials(
    state: FlowState, source: int, delta: int
) -> tuple[list[float], list[tuple[int, int, int] | None]]:
    """Dijkstra over reduced costs of the Delta-residual graph.

    Returns distances and, per vertex, the predecessor arc as
    ``(previous vertex, road, direction)``. Ties go to the smaller vertex,
    then the smaller road index.
    """
    n = state.n
    dist = [math.inf] * n
    pred: list[tuple[int, int, int] | None] = [None] * n
    done = [False] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    pi = state.pi
    tol = state.tol * delta
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for r, direction, v in state.out[u]:
            if done[v]:
                continue
            rc = state.arc_cost(r, direction, delta) - pi[u] + pi[v]
            if rc < 0.0:
                if rc < -tol:
                    raise NegativeReducedCost(
                        f"road {r} direction {direction:+d}: reduced cost {rc!r}"
                    )
                rc = 0.0
            nd = d + rc
            cand = (u, r, direction)
            if nd < dist[v] or (nd == dist[v] and pred[v] is not None and cand < pred[v]):
                dist[v] = nd
                pred[v] = cand
                heapq.heappush(heap, (nd, v))
    return dist, pred


def _saturate(state: FlowState, delta: int, stats: SolverStats) -> None:
    tol = state.tol * delta
    for r in range(state.E):
        for direction in (FORWARD, BACKWARD):
            while state.reduced_cost(r, direction, delta) < -tol:
                state.push(r, direction, delta)
                stats.saturating_pushes += 1


def _first(e: list[int], pred) -> int | None:
    for u, x in enumerate(e):
        if pred(x):
            return u
    return None


def solve(
    instance: CcfpInstance,
    M: int | None = None,
    *,
    stats: SolverStats | None = None,
    check: bool = False,
) -> np.ndarray:
    """Optimal integer road levels ``Z*``, indexed by road.

    ``M`` bounds the total supply (defaults to ``instance.M``). With
    ``check=True`` the reduced-cost optimality condition is recomputed at the
    end of every phase and recorded in ``stats``.
    """
    if stats is None:
        stats = SolverStats()
    if M is None:
        M = instance.M
    supply = instance.node_supply
    if int(supply.sum()) != 0:
        raise UnbalancedSupply(f"vertex supplies sum to {int(supply.sum())}, not 0")

    state = FlowState(instance)
    U = max(1, int(M))
    delta = 1 << (U.bit_length() - 1)
    while delta >= 1:
        stats.phases += 1
        stats.deltas.append(delta)
        _saturate(state, delta, stats)
        while True:
            s = _first(state.e, lambda x: x >= delta)
            t = _first(state.e, lambda x: x <= -delta)
            if s is None or t is None:
                break
            dist, pred = shortest_path_with_potentials(state, s, delta)
            stats.sp_calls += 1
            if math.isinf(dist[t]):
                raise NoPath(f"no residual path from vertex {s} to vertex {t}")
            v = t
            while v != s:
                u, r, direction = pred[v]
                state.push(r, direction, delta)
                v = u
            stats.augmentations += 1
            # every vertex is reachable: residual arcs are uncapacitated
            state.pi = [p - d for p, d in zip(state.pi, dist)]
        if check:
            stats.phase_min_reduced_cost.append(state.min_reduced_cost(delta))
        delta //= 2
        state.pi = [p / 2.0 for p in state.pi]

    if any(state.e):
        raise UnbalancedSupply(f"imbalances remain after final phase: {state.e}")
    return np.asarray(state.z, dtype=np.int64)


def _as_levels(instance: CcfpInstance, Z) -> list[int]:
    if isinstance(Z, Mapping):
        idx = instance.roadmap.road_index
        out = [0] * instance.roadmap.n_roads
        for key, val in Z.items():
            out[idx[key] if isinstance(key, str) else int(key)] = int(val)
        return out
    return [int(v) for v in Z]


def objective_value(instance: CcfpInstance, Z) -> float:
    """Total cost ``sum_r C(z_r; r)``. ``Z`` is a per-road sequence or a map keyed by road id."""
    levels = _as_levels(instance, Z)
    return float(sum(eval_cost(instance.profile(r), z) for r, z in enumerate(levels)))


def conservation_residual(instance: CcfpInstance, Z) -> np.ndarray:
    """Per-vertex ``inflow + supply - outflow``; all zeros iff ``Z`` is feasible."""
    rm = instance.roadmap
    z = np.asarray(_as_levels(instance, Z), dtype=np.int64)
    res = instance.node_supply.astype(np.int64).copy()
    np.add.at(res, rm.heads, z)
    np.subtract.at(res, rm.tails, z)
    return res
