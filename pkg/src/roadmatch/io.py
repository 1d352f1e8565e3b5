"""Instance files and random instance generation."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .errors import InvalidParams, ParseError
from .roadmap import MatchingInstance, Roadmap, parse_roadmap, validate_instance


def read_raw(path: str | Path) -> dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError(f"{path}: top level must be a JSON object")
    return raw


def load_instance(path: str | Path) -> MatchingInstance:
    return validate_instance(read_raw(path))


def load_roadmap(path: str | Path) -> Roadmap:
    return parse_roadmap(read_raw(path))


def instance_to_raw(instance: MatchingInstance) -> dict[str, Any]:
    rm = instance.roadmap
    return {
        "vertices": list(rm.vertices),
        "roads": [
            {"id": r.id, "tail": r.tail, "head": r.head, "length": r.length}
            for r in rm.roads
        ],
        "S": [{"road": a.road, "y": a.y} for a in instance.S],
        "T": [{"road": a.road, "y": a.y} for a in instance.T],
    }


def dumps_raw(raw: dict[str, Any]) -> str:
    """JSON with one list element per line, so instance files diff cleanly."""
    parts = []
    for key, value in raw.items():
        if isinstance(value, list) and value:
            items = ",\n".join("  " + json.dumps(v) for v in value)
            parts.append(f"{json.dumps(key)}: [\n{items}\n]")
        else:
            parts.append(f"{json.dumps(key)}: {json.dumps(value)}")
    return "{\n" + ",\n".join(parts) + "\n}\n"


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    vertices: int
    roads: int
    points: int
    min_len: float = 0.1
    max_len: float = 10.0

    def validate(self) -> None:
        if self.vertices < 1:
            raise InvalidParams("need at least one vertex")
        if self.roads < 1 or self.roads < self.vertices - 1:
            raise InvalidParams(
                f"{self.roads} roads cannot connect {self.vertices} vertices"
            )
        if self.points < 0:
            raise InvalidParams("points must be nonnegative")
        if not (0 < self.min_len <= self.max_len):
            raise InvalidParams("need 0 < min_len <= max_len")


def random_roadmap_raw(cfg: GeneratorConfig, rng: np.random.Generator) -> dict[str, Any]:
    """Random spanning tree plus extra roads; loops and parallels allowed."""
    vertices = [f"v{i}" for i in range(cfg.vertices)]
    ends = []
    for i in range(1, cfg.vertices):
        j = int(rng.integers(i))
        ends.append((i, j) if rng.random() < 0.5 else (j, i))
    for _ in range(cfg.roads - len(ends)):
        ends.append((int(rng.integers(cfg.vertices)), int(rng.integers(cfg.vertices))))
    order = rng.permutation(len(ends))
    lengths = rng.uniform(cfg.min_len, cfg.max_len, size=len(ends))
    roads = [
        {
            "id": f"r{k}",
            "tail": vertices[ends[o][0]],
            "head": vertices[ends[o][1]],
            "length": float(lengths[k]),
        }
        for k, o in enumerate(order.tolist())
    ]
    return {"vertices": vertices, "roads": roads}


def random_points(
    lengths: np.ndarray, count: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Points uniform over the total road length, as (road index, coordinate)."""
    cum = np.cumsum(lengths)
    u = rng.uniform(0.0, cum[-1], size=count)
    roads = np.minimum(np.searchsorted(cum, u, side="right"), len(lengths) - 1)
    y = u - (cum[roads] - lengths[roads])
    y = np.clip(y, 0.0, lengths[roads])
    return roads.astype(np.int64), y


def random_instance_on(
    roadmap: Roadmap, M: int, rng: np.random.Generator
) -> MatchingInstance:
    s_roads, s_y = random_points(roadmap.lengths, M, rng)
    t_roads, t_y = random_points(roadmap.lengths, M, rng)
    return MatchingInstance.from_arrays(roadmap, s_roads, s_y, t_roads, t_y)


def generate_raw(cfg: GeneratorConfig) -> dict[str, Any]:
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    raw = random_roadmap_raw(cfg, rng)
    roadmap = parse_roadmap(raw)
    inst = random_instance_on(roadmap, cfg.points, rng)
    raw["S"] = [{"road": a.road, "y": a.y} for a in inst.S]
    raw["T"] = [{"road": a.road, "y": a.y} for a in inst.T]
    return raw


def generate_instance(cfg: GeneratorConfig) -> MatchingInstance:
    return validate_instance(generate_raw(cfg))
