"""Exact minimum-cost bipartite matching between point sets on a roadmap."""

from .matching import (
    IntervalGraph,
    Matching,
    audit_matching,
    build_interval_graph,
    construct_matching,
    is_multitree,
    topological_order,
)
from .oracles import circle_min_cost, cost_matrix, hungarian_min_cost, line_match
from .pipeline import SolveResult, solve_matching
from .profiles import CcfpInstance, RoadProfile, build_profiles, delta_cost, eval_cost
from .roadmap import (
    Address,
    MatchingInstance,
    Road,
    Roadmap,
    pair_distances,
    roadmap_distance,
    validate_instance,
)
from .solver import SolverStats, objective_value, solve

__all__ = [
    "Address",
    "CcfpInstance",
    "IntervalGraph",
    "Matching",
    "MatchingInstance",
    "Road",
    "RoadProfile",
    "Roadmap",
    "SolveResult",
    "SolverStats",
    "audit_matching",
    "build_interval_graph",
    "build_profiles",
    "circle_min_cost",
    "construct_matching",
    "cost_matrix",
    "delta_cost",
    "eval_cost",
    "hungarian_min_cost",
    "is_multitree",
    "line_match",
    "objective_value",
    "pair_distances",
    "roadmap_distance",
    "solve",
    "solve_matching",
    "topological_order",
    "validate_instance",
]
