"""End-to-end solve: transcribe, optimize levels, construct the matching."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import OracleMismatch
from .matching import (
    IntervalGraph,
    Matching,
    audit_matching,
    build_interval_graph,
    construct_matching,
    match_distances,
    topological_order,
)
from .oracles import cost_matrix, hungarian_min_cost
from .profiles import CcfpInstance, build_profiles
from .roadmap import MatchingInstance
from .solver import SolverStats, objective_value, solve

COST_RTOL = 1e-9
ORACLE_RTOL = 1e-6


@dataclass
class SolveResult:
    instance: MatchingInstance
    ccfp: CcfpInstance
    Z: np.ndarray
    graph: IntervalGraph
    order: list[int]
    matching: Matching
    objective: float
    distances: np.ndarray
    stats: SolverStats
    timings_ms: dict[str, float] = field(default_factory=dict)

    @property
    def cost(self) -> float:
        return self.objective

    def report(self) -> dict[str, Any]:
        rm = self.instance.roadmap
        return {
            "cost": self.objective,
            "matches": [
                {"s": i, "t": j, "distance": float(d)}
                for (i, j), d in zip(self.matching.pairs, self.distances.tolist())
            ],
            "flow": {road.id: int(z) for road, z in zip(rm.roads, self.Z.tolist())},
            "stats": {
                "phases": self.stats.phases,
                "sp_calls": self.stats.sp_calls,
                "ms_transcribe": self.timings_ms["transcribe"],
                "ms_solve": self.timings_ms["solve"],
                "ms_construct": self.timings_ms["construct"],
            },
        }


def _close(a: float, b: float, rtol: float) -> bool:
    return abs(a - b) <= rtol * max(1.0, abs(a), abs(b))


def solve_matching(
    instance: MatchingInstance,
    *,
    audit: bool = False,
    oracle: bool = False,
    check: bool = False,
) -> SolveResult:
    """Run the whole pipeline on a validated instance.

    ``audit`` recomputes the cost from roadmap distances, ``oracle`` compares
    against the Hungarian method on the full cost matrix (small M only);
    either raises :class:`OracleMismatch` on disagreement.
    """
    timings: dict[str, float] = {}
    stats = SolverStats()

    t0 = time.perf_counter()
    ccfp = build_profiles(instance)
    t1 = time.perf_counter()
    Z = solve(ccfp, instance.M, stats=stats, check=check)
    t2 = time.perf_counter()
    graph = build_interval_graph(ccfp, Z)
    order = topological_order(graph)
    matching = construct_matching(graph, order)
    t3 = time.perf_counter()
    timings["transcribe"] = (t1 - t0) * 1e3
    timings["solve"] = (t2 - t1) * 1e3
    timings["construct"] = (t3 - t2) * 1e3

    objective = objective_value(ccfp, Z)
    distances = match_distances(instance, matching)
    result = SolveResult(
        instance, ccfp, Z, graph, order, matching, objective, distances, stats, timings
    )

    if audit:
        audited = audit_matching(instance, matching)
        if not _close(audited, objective, COST_RTOL):
            raise OracleMismatch(
                f"audited matching cost {audited!r} != optimal level cost {objective!r}",
                expected=objective,
                actual=audited,
            )
    if oracle:
        _, best = hungarian_min_cost(cost_matrix(instance))
        if not _close(best, objective, ORACLE_RTOL):
            raise OracleMismatch(
                f"Hungarian cost {best!r} != pipeline cost {objective!r}",
                expected=best,
                actual=objective,
            )
    return result
