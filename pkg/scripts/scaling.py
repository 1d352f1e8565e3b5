"""Time the full pipeline for doubling M on one fixed random roadmap.

Prints CSV rows ``M,ms_total,ms_transcribe,ms_solve,ms_construct,ratio``
where ``ratio`` is ``ms_total(M) / ms_total(M/2)``.

    python scripts/scaling.py --min-exp 10 --max-exp 18
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

import numpy as np

from roadmatch import solve_matching
from roadmatch.io import GeneratorConfig, random_instance_on, random_roadmap_raw
from roadmatch.roadmap import parse_roadmap


@dataclass
class ScalingConfig:
    vertices: int = 6
    roads: int = 10
    min_exp: int = 10
    max_exp: int = 18
    repeats: int = 3
    seed: int = 5


def run(cfg: ScalingConfig) -> None:
    gen = GeneratorConfig(cfg.seed, cfg.vertices, cfg.roads, 0)
    roadmap = parse_roadmap(random_roadmap_raw(gen, np.random.default_rng(cfg.seed)))
    rng = np.random.default_rng(cfg.seed + 1)
    print("M,ms_total,ms_transcribe,ms_solve,ms_construct,ratio")
    prev = None
    for k in range(cfg.min_exp, cfg.max_exp + 1):
        inst = random_instance_on(roadmap, 2**k, rng)
        best, timings = np.inf, {}
        for _ in range(cfg.repeats):
            t0 = time.perf_counter()
            res = solve_matching(inst)
            total = (time.perf_counter() - t0) * 1e3
            if total < best:
                best, timings = total, res.timings_ms
        ratio = "" if prev is None else f"{best / prev:.3f}"
        print(
            f"{2**k},{best:.2f},{timings['transcribe']:.2f},"
            f"{timings['solve']:.2f},{timings['construct']:.2f},{ratio}",
            flush=True,
        )
        prev = best


def main() -> None:
    defaults = ScalingConfig()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, value in vars(defaults).items():
        p.add_argument("--" + name.replace("_", "-"), type=type(value), default=value)
    run(ScalingConfig(**vars(p.parse_args())))


if __name__ == "__main__":
    main()
