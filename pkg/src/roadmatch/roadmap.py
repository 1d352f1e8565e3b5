"""Roadmap metric space: vertices, oriented roads, addresses and distances."""

from __future__ import annotations

import heapq
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np

from .errors import (
    CardinalityMismatch,
    CoordinateOutOfRange,
    DanglingEndpoint,
    Disconnected,
    DuplicateId,
    NonPositiveLength,
    ParseError,
    UnknownRoad,
)


@dataclass(frozen=True)
class Road:
    id: str
    tail: str
    head: str
    length: float


@dataclass(frozen=True)
class Address:
    road: str
    y: float


@dataclass(frozen=True, eq=False)
class Roadmap:
    """Undirected multigraph with a fixed orientation per road.

    Vertex and road ids are opaque strings; internally they are mapped to
    dense indices in input order. Self-loops and parallel roads are allowed.
    Validation happens on construction.
    """

    vertices: tuple[str, ...]
    roads: tuple[Road, ...]
    vertex_index: dict[str, int] = field(init=False, repr=False)
    road_index: dict[str, int] = field(init=False, repr=False)
    tails: np.ndarray = field(init=False, repr=False)
    heads: np.ndarray = field(init=False, repr=False)
    lengths: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        vertices = tuple(self.vertices)
        roads = tuple(self.roads)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "roads", roads)

        vertex_index: dict[str, int] = {}
        for v in vertices:
            if v in vertex_index:
                raise DuplicateId(f"duplicate vertex id {v!r}")
            vertex_index[v] = len(vertex_index)
        road_index: dict[str, int] = {}
        tails, heads, lengths = [], [], []
        for road in roads:
            if road.id in road_index:
                raise DuplicateId(f"duplicate road id {road.id!r}")
            if not (math.isfinite(road.length) and road.length > 0):
                raise NonPositiveLength(
                    f"road {road.id!r} has length {road.length!r}; must be finite and > 0"
                )
            for end in (road.tail, road.head):
                if end not in vertex_index:
                    raise DanglingEndpoint(
                        f"road {road.id!r} references unknown vertex {end!r}"
                    )
            road_index[road.id] = len(road_index)
            tails.append(vertex_index[road.tail])
            heads.append(vertex_index[road.head])
            lengths.append(float(road.length))

        object.__setattr__(self, "vertex_index", vertex_index)
        object.__setattr__(self, "road_index", road_index)
        object.__setattr__(self, "tails", np.asarray(tails, dtype=np.int64))
        object.__setattr__(self, "heads", np.asarray(heads, dtype=np.int64))
        object.__setattr__(self, "lengths", np.asarray(lengths, dtype=np.float64))
        self._check_connected()

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_roads(self) -> int:
        return len(self.roads)

    @property
    def total_length(self) -> float:
        return float(self.lengths.sum())

    def _check_connected(self) -> None:
        n = self.n_vertices
        if n == 0:
            if self.roads:
                raise DanglingEndpoint("roads given but no vertices")
            raise Disconnected("roadmap has no vertices")
        parent = list(range(n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        components = n
        for a, b in zip(self.tails.tolist(), self.heads.tolist()):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                components -= 1
        if components != 1:
            raise Disconnected(f"roadmap has {components} connected components")

    @cached_property
    def adjacency(self) -> list[list[tuple[int, int, float]]]:
        """Per vertex, ``(neighbor, road index, length)`` for every incident road."""
        adj: list[list[tuple[int, int, float]]] = [[] for _ in range(self.n_vertices)]
        for r, (a, b, length) in enumerate(
            zip(self.tails.tolist(), self.heads.tolist(), self.lengths.tolist())
        ):
            adj[a].append((b, r, length))
            if a != b:
                adj[b].append((a, r, length))
        return adj

    def vertex_distances_from(self, source: int) -> list[float]:
        """Dijkstra from ``source`` over road lengths; ties pop smallest vertex first."""
        dist = [math.inf] * self.n_vertices
        dist[source] = 0.0
        heap = [(0.0, source)]
        done = [False] * self.n_vertices
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            for v, _, length in self.adjacency[u]:
                nd = d + length
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        return dist

    @cached_property
    def vertex_distances(self) -> np.ndarray:
        """All-pairs vertex distance matrix (one Dijkstra per vertex)."""
        return np.array(
            [self.vertex_distances_from(u) for u in range(self.n_vertices)],
            dtype=np.float64,
        ).reshape(self.n_vertices, self.n_vertices)

    def check_address(self, a: Address) -> int:
        """Return the road index of ``a`` or raise."""
        try:
            r = self.road_index[a.road]
        except KeyError:
            raise UnknownRoad(f"address references unknown road {a.road!r}") from None
        y = a.y
        if not (math.isfinite(y) and 0.0 <= y <= self.lengths[r]):
            raise CoordinateOutOfRange(
                f"coordinate {y!r} outside [0, {self.lengths[r]!r}] on road {a.road!r}"
            )
        return r


@dataclass(frozen=True, eq=False)
class MatchingInstance:
    """Two equal-size point sets on a roadmap, stored column-wise.

    ``s_roads``/``t_roads`` hold road indices and ``s_y``/``t_y`` coordinates;
    the i-th entries describe ``S[i]`` (resp. ``T[i]``).
    """

    roadmap: Roadmap
    s_roads: np.ndarray
    s_y: np.ndarray
    t_roads: np.ndarray
    t_y: np.ndarray

    @property
    def M(self) -> int:
        return len(self.s_y)

    @property
    def S(self) -> list[Address]:
        return self._addresses(self.s_roads, self.s_y)

    @property
    def T(self) -> list[Address]:
        return self._addresses(self.t_roads, self.t_y)

    def _addresses(self, roads: np.ndarray, ys: np.ndarray) -> list[Address]:
        rm = self.roadmap.roads
        return [Address(rm[r].id, y) for r, y in zip(roads.tolist(), ys.tolist())]

    @classmethod
    def from_addresses(
        cls, roadmap: Roadmap, S: Sequence[Address], T: Sequence[Address]
    ) -> MatchingInstance:
        if len(S) != len(T):
            raise CardinalityMismatch(f"|S| = {len(S)} but |T| = {len(T)}")
        s_roads = [roadmap.check_address(a) for a in S]
        t_roads = [roadmap.check_address(a) for a in T]
        return cls(
            roadmap,
            np.asarray(s_roads, dtype=np.int64),
            np.asarray([float(a.y) for a in S], dtype=np.float64),
            np.asarray(t_roads, dtype=np.int64),
            np.asarray([float(a.y) for a in T], dtype=np.float64),
        )

    @classmethod
    def from_arrays(
        cls,
        roadmap: Roadmap,
        s_roads: np.ndarray,
        s_y: np.ndarray,
        t_roads: np.ndarray,
        t_y: np.ndarray,
    ) -> MatchingInstance:
        """Vectorized constructor for road-index arrays; bounds are still checked."""
        s_roads = np.asarray(s_roads, dtype=np.int64)
        t_roads = np.asarray(t_roads, dtype=np.int64)
        s_y = np.asarray(s_y, dtype=np.float64)
        t_y = np.asarray(t_y, dtype=np.float64)
        if len(s_y) != len(t_y):
            raise CardinalityMismatch(f"|S| = {len(s_y)} but |T| = {len(t_y)}")
        for roads, ys in ((s_roads, s_y), (t_roads, t_y)):
            if len(roads) != len(ys):
                raise ValueError("road and coordinate arrays differ in length")
            if len(roads) == 0:
                continue
            if roads.min() < 0 or roads.max() >= roadmap.n_roads:
                raise UnknownRoad("road index out of range")
            lim = roadmap.lengths[roads]
            bad = ~(np.isfinite(ys) & (ys >= 0.0) & (ys <= lim))
            if bad.any():
                i = int(np.flatnonzero(bad)[0])
                raise CoordinateOutOfRange(
                    f"coordinate {ys[i]!r} outside [0, {lim[i]!r}] "
                    f"on road {roadmap.roads[roads[i]].id!r}"
                )
        return cls(roadmap, s_roads, s_y, t_roads, t_y)


def _field(obj: Mapping[str, Any], key: str, where: str) -> Any:
    if not isinstance(obj, Mapping):
        raise ParseError(f"{where}: expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    return obj[key]


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    return float(value)


def parse_roadmap(raw: Mapping[str, Any]) -> Roadmap:
    vertices = _field(raw, "vertices", "instance")
    roads_raw = _field(raw, "roads", "instance")
    if not isinstance(vertices, list) or not isinstance(roads_raw, list):
        raise ParseError("'vertices' and 'roads' must be arrays")
    roads = []
    for i, rr in enumerate(roads_raw):
        where = f"roads[{i}]"
        roads.append(
            Road(
                id=str(_field(rr, "id", where)),
                tail=str(_field(rr, "tail", where)),
                head=str(_field(rr, "head", where)),
                length=_number(_field(rr, "length", where), where + ".length"),
            )
        )
    return Roadmap(tuple(str(v) for v in vertices), tuple(roads))


def validate_instance(raw: Mapping[str, Any]) -> MatchingInstance:
    """Turn a parsed instance description into a validated :class:`MatchingInstance`.

    ``raw`` has the shape of the JSON instance file: ``vertices``, ``roads``,
    ``S`` and ``T``. Raises a :class:`~roadmatch.errors.ValidationError`
    subclass describing the first problem found.
    """
    roadmap = parse_roadmap(raw)
    points = {}
    for key in ("S", "T"):
        lst = _field(raw, key, "instance")
        if not isinstance(lst, list):
            raise ParseError(f"{key!r} must be an array")
        points[key] = [
            Address(
                str(_field(p, "road", f"{key}[{i}]")),
                _number(_field(p, "y", f"{key}[{i}]"), f"{key}[{i}].y"),
            )
            for i, p in enumerate(lst)
        ]
    return MatchingInstance.from_addresses(roadmap, points["S"], points["T"])


def roadmap_distance(roadmap: Roadmap, a: Address, b: Address) -> float:
    """Shortest-path length between two addresses on the roadmap continuum."""
    ra = roadmap.check_address(a)
    rb = roadmap.check_address(b)
    return float(
        pair_distances(
            roadmap,
            np.array([ra]),
            np.array([a.y], dtype=np.float64),
            np.array([rb]),
            np.array([b.y], dtype=np.float64),
        )[0]
    )


def pair_distances(
    roadmap: Roadmap,
    a_roads: np.ndarray,
    a_y: np.ndarray,
    b_roads: np.ndarray,
    b_y: np.ndarray,
) -> np.ndarray:
    """Elementwise roadmap distance for broadcastable address arrays.

    Minimum of the same-road offset (where applicable) and the four routes
    leaving ``a``'s road through one endpoint and entering ``b``'s road
    through another.
    """
    D = roadmap.vertex_distances
    a_roads, b_roads = np.broadcast_arrays(np.asarray(a_roads), np.asarray(b_roads))
    a_y, b_y = np.broadcast_arrays(np.asarray(a_y, float), np.asarray(b_y, float))
    a_len = roadmap.lengths[a_roads]
    b_len = roadmap.lengths[b_roads]
    a_ends = ((roadmap.tails[a_roads], a_y), (roadmap.heads[a_roads], a_len - a_y))
    b_ends = ((roadmap.tails[b_roads], b_y), (roadmap.heads[b_roads], b_len - b_y))
    best = np.where(a_roads == b_roads, np.abs(a_y - b_y), np.inf)
    for va, da in a_ends:
        for vb, db in b_ends:
            best = np.minimum(best, da + D[va, vb] + db)
    return best
