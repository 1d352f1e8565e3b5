"""Slow, independent solvers for cross-checking the main pipeline."""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np

from .roadmap import MatchingInstance, pair_distances


def cost_matrix(instance: MatchingInstance) -> np.ndarray:
    """Roadmap distance between every S point (rows) and T point (columns)."""
    return pair_distances(
        instance.roadmap,
        instance.s_roads[:, None],
        instance.s_y[:, None],
        instance.t_roads[None, :],
        instance.t_y[None, :],
    ).reshape(instance.M, instance.M)


def hungarian_min_cost(c) -> tuple[list[int], float]:
    """Minimum-cost assignment by the O(n^3) shortest-augmenting-path Hungarian method.

    Returns ``(perm, cost)`` with row ``i`` assigned to column ``perm[i]``.
    """
    a = np.asarray(c, dtype=np.float64)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError(f"cost matrix must be square, got shape {a.shape}")
    if n == 0:
        return [], 0.0
    inf = math.inf
    # 1-based; column 0 is a virtual start column
    u = [0.0] * (n + 1)
    v = [0.0] * (n + 1)
    col_owner = [0] * (n + 1)
    way = [0] * (n + 1)
    rows = a.tolist()
    for i in range(1, n + 1):
        col_owner[0] = i
        j0 = 0
        minv = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = col_owner[j0]
            delta = inf
            j1 = 0
            row = rows[i0 - 1]
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = row[j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[col_owner[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if col_owner[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            col_owner[j0] = col_owner[j1]
            j0 = j1
    perm = [0] * n
    for j in range(1, n + 1):
        perm[col_owner[j] - 1] = j - 1
    cost = float(sum(rows[i][perm[i]] for i in range(n)))
    return perm, cost


def line_match(S: Sequence[float], T: Sequence[float]) -> tuple[list[tuple[int, int]], float]:
    """Pair the k-th smallest S coordinate with the k-th smallest T coordinate."""
    s = np.asarray(S, dtype=np.float64)
    t = np.asarray(T, dtype=np.float64)
    if s.shape != t.shape:
        raise ValueError("S and T must have the same size")
    si = np.argsort(s, kind="stable")
    ti = np.argsort(t, kind="stable")
    pairs = sorted(zip(si.tolist(), ti.tolist()))
    return pairs, float(np.abs(s[si] - t[ti]).sum())


def circle_min_cost(S: Sequence[float], T: Sequence[float], circumference: float) -> float:
    """Minimum over integer z in [-M, M] of ``integral |F(y) + z| dy`` around the circle."""
    s = np.asarray(S, dtype=np.float64)
    t = np.asarray(T, dtype=np.float64)
    M = len(s)
    if len(t) != M:
        raise ValueError("S and T must have the same size")
    ys = np.concatenate((s, t))
    steps = np.concatenate((np.ones(M, dtype=np.int64), -np.ones(M, dtype=np.int64)))
    order = np.argsort(ys, kind="stable")
    ys, steps = ys[order], steps[order]
    cuts = np.concatenate(([0.0], ys, [float(circumference)]))
    widths = np.diff(cuts)
    F = np.concatenate(([0], np.cumsum(steps)))
    best = math.inf
    for z in range(-M, M + 1):
        best = min(best, float(np.dot(widths, np.abs(F + z))))
    return best


def circle_distance(a: float, b: float, circumference: float) -> float:
    d = abs(a - b)
    return min(d, circumference - d)
