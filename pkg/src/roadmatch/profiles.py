"""Per-road piecewise-linear cost profiles and vertex supplies.

For a road r, let F(y) be the number of S points minus the number of T points
strictly left of y. Shifting by an integer level z, the total length of match
fragments on the road is ``C(z) = integral |F(y) + z| dy``. Writing
``I_i`` for the total length on which ``-F`` equals level ``Z_i``, this is
``C(z) = sum_i I_i |z - Z_i|``: convex, piecewise linear with breakpoints at
the consecutive integers ``Z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .roadmap import MatchingInstance, Roadmap


@dataclass(frozen=True, eq=False)
class RoadProfile:
    """Transcribed cost data for one road.

    Attributes
    ----------
    road:
        Road index in the roadmap.
    length:
        Road length ``L_r``.
    Y:
        ``[0, y_1, ..., y_K, L_r]``, the sorted point coordinates with sentinels.
    F:
        ``F[i]`` is the value of F on ``[Y[i], Y[i+1])``; ``F[0] == 0``.
    point_is_s, point_index:
        For the K points in coordinate order: whether each belongs to S, and
        its index in S or T.
    levels:
        Consecutive integers ``Z_1 < ... < Z_K2``, the distinct values of
        ``-F``. The unbounded piece below ``Z_1`` plays the role of the
        ``-inf`` sentinel and is piece 0.
    measures:
        ``measures[i]`` is the length on which ``-F == levels[i]``.
    alpha, beta:
        ``K2 + 1`` line pieces; piece k is ``alpha[k] + beta[k] * z`` on
        ``[levels[k-1], levels[k]]`` (open-ended at both extremes).
    """

    road: int
    length: float
    Y: np.ndarray
    F: np.ndarray
    point_is_s: np.ndarray
    point_index: np.ndarray
    levels: np.ndarray
    measures: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray

    @property
    def surplus(self) -> int:
        return int(self.F[-1])

    @property
    def n_points(self) -> int:
        return len(self.point_index)

    @property
    def n_pieces(self) -> int:
        return len(self.alpha)

    @property
    def z_lo(self) -> int:
        return int(self.levels[0])

    @property
    def z_hi(self) -> int:
        return int(self.levels[-1])

    @property
    def is_implicit(self) -> bool:
        return self.n_points == 0

    def piece_index(self, z: int) -> int:
        k = z - int(self.levels[0]) + 1
        return min(max(k, 0), len(self.levels))

    def interval_lengths(self) -> np.ndarray:
        return np.diff(self.Y)


def _pieces(levels: np.ndarray, measures: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # piece k covers z >= levels[k-1] and z <= levels[k]: levels[:k] lie below
    below = np.concatenate(([0.0], np.cumsum(measures)))
    below_z = np.concatenate(([0.0], np.cumsum(measures * levels)))
    total, total_z = below[-1], below_z[-1]
    beta = below - (total - below)
    alpha = (total_z - below_z) - below_z
    return alpha, beta


def _profile(
    road: int,
    length: float,
    ys: np.ndarray,
    is_s: np.ndarray,
    index: np.ndarray,
) -> RoadProfile:
    steps = np.where(is_s, 1, -1).astype(np.int64)
    F = np.concatenate((np.zeros(1, dtype=np.int64), np.cumsum(steps)))
    Y = np.concatenate(([0.0], ys, [length]))
    widths = np.diff(Y)
    neg = -F
    lo = int(neg.min())
    levels = np.arange(lo, int(neg.max()) + 1, dtype=np.int64)
    measures = np.bincount(neg - lo, weights=widths, minlength=len(levels))
    alpha, beta = _pieces(levels, measures)
    return RoadProfile(road, length, Y, F, is_s, index, levels, measures, alpha, beta)


def implicit_profile(road: int, length: float) -> RoadProfile:
    """Profile of a road carrying no points: ``C(z) = L |z|``."""
    empty_f = np.zeros(0, dtype=np.float64)
    return _profile(
        road, length, empty_f, np.zeros(0, dtype=bool), np.zeros(0, dtype=np.int64)
    )


@dataclass(frozen=True, eq=False)
class CcfpInstance:
    """Convex cost flow instance: one cost profile per road plus vertex supplies.

    Only roads that carry points are stored in ``profiles``; the rest are
    served by :func:`implicit_profile` on demand.
    """

    roadmap: Roadmap
    profiles: dict[int, RoadProfile]
    node_supply: np.ndarray
    M: int

    def profile(self, road: int) -> RoadProfile:
        p = self.profiles.get(road)
        if p is None:
            p = implicit_profile(road, float(self.roadmap.lengths[road]))
        return p

    def surpluses(self) -> np.ndarray:
        b = np.zeros(self.roadmap.n_roads, dtype=np.int64)
        for r, p in self.profiles.items():
            b[r] = p.surplus
        return b

    def total_pieces(self) -> int:
        """Linear pieces over all roads, implicit ones counted as two each."""
        materialized = sum(p.n_pieces for p in self.profiles.values())
        return materialized + 2 * (self.roadmap.n_roads - len(self.profiles))


def build_profiles(instance: MatchingInstance) -> CcfpInstance:
    """Transcribe a matching instance into per-road cost profiles.

    Points are ordered by (road, coordinate) with S before T at equal
    coordinates and input order kept within each set.
    """
    rm = instance.roadmap
    M = instance.M
    roads = np.concatenate((instance.s_roads, instance.t_roads))
    ys = np.concatenate((instance.s_y, instance.t_y))
    is_s = np.concatenate((np.ones(M, dtype=bool), np.zeros(M, dtype=bool)))
    index = np.concatenate((np.arange(M), np.arange(M))).astype(np.int64)
    order = np.lexsort((~is_s, ys, roads))
    roads, ys, is_s, index = roads[order], ys[order], is_s[order], index[order]

    profiles: dict[int, RoadProfile] = {}
    if len(roads):
        cuts = np.flatnonzero(np.diff(roads)) + 1
        starts = np.concatenate(([0], cuts))
        ends = np.concatenate((cuts, [len(roads)]))
        for a, b in zip(starts.tolist(), ends.tolist()):
            r = int(roads[a])
            profiles[r] = _profile(
                r, float(rm.lengths[r]), ys[a:b], is_s[a:b], index[a:b]
            )

    b_r = np.zeros(rm.n_roads, dtype=np.int64)
    for r, p in profiles.items():
        b_r[r] = p.surplus
    supply = np.zeros(rm.n_vertices, dtype=np.int64)
    np.add.at(supply, rm.heads, b_r)
    return CcfpInstance(rm, profiles, supply, M)


def eval_cost(profile: RoadProfile, z: int) -> float:
    """``C(z)`` for one road by positional piece lookup."""
    k = profile.piece_index(int(z))
    return float(profile.alpha[k] + profile.beta[k] * z)


def delta_cost(
    profile: RoadProfile,
    z: int,
    delta: int,
    direction: Literal["forward", "backward"] = "forward",
) -> float:
    """Cost change of moving the level from ``z`` by ``delta`` in ``direction``."""
    if direction == "forward":
        target = z + delta
    elif direction == "backward":
        target = z - delta
    else:
        raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")
    return eval_cost(profile, target) - eval_cost(profile, z)
