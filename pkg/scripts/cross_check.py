"""Compare the pipeline against the Hungarian method on random small instances.

    python scripts/cross_check.py --instances 2000 --max-points 12
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

import numpy as np

from roadmatch import cost_matrix, hungarian_min_cost, is_multitree, solve_matching
from roadmatch.io import GeneratorConfig, generate_instance


@dataclass
class CrossCheckConfig:
    instances: int = 1000
    max_vertices: int = 6
    max_roads: int = 10
    max_points: int = 10
    seed: int = 0
    rtol: float = 1e-6


def run(cfg: CrossCheckConfig) -> int:
    rng = np.random.default_rng(cfg.seed)
    mismatches = non_multitree = 0
    t0 = time.perf_counter()
    for k in range(cfg.instances):
        n = int(rng.integers(1, cfg.max_vertices + 1))
        E = int(rng.integers(max(1, n - 1), cfg.max_roads + 1))
        M = int(rng.integers(0, cfg.max_points + 1))
        inst = generate_instance(GeneratorConfig(int(rng.integers(2**31)), n, E, M))
        res = solve_matching(inst, audit=True, check=True)
        _, ref = hungarian_min_cost(cost_matrix(inst))
        if abs(res.cost - ref) > cfg.rtol * max(1.0, abs(ref)):
            mismatches += 1
            print(f"instance {k}: pipeline {res.cost!r} vs Hungarian {ref!r}")
        if res.graph.n_nodes <= 40 and not is_multitree(res.graph):
            non_multitree += 1
    elapsed = time.perf_counter() - t0
    print(
        f"{cfg.instances} instances in {elapsed:.1f}s: "
        f"{mismatches} cost mismatches, {non_multitree} non-multi-tree interval graphs"
    )
    return 1 if mismatches else 0


def main() -> int:
    defaults = CrossCheckConfig()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, value in vars(defaults).items():
        p.add_argument("--" + name.replace("_", "-"), type=type(value), default=value)
    return run(CrossCheckConfig(**vars(p.parse_args())))


if __name__ == "__main__":
    raise SystemExit(main())
