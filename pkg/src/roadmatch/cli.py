"""Command-line front end: ``solve``, ``generate`` and ``bench``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from .errors import InvalidParams, InvariantViolation, OracleMismatch, ValidationError
from .io import GeneratorConfig, dumps_raw, generate_raw, load_instance, load_roadmap, random_instance_on
from .pipeline import solve_matching

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2


def _write(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_solve(args: argparse.Namespace) -> int:
    instance = load_instance(args.file)
    result = solve_matching(instance, audit=args.audit, oracle=args.oracle)
    _write(json.dumps(result.report(), indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    cfg = GeneratorConfig(
        seed=args.seed,
        vertices=args.vertices,
        roads=args.roads,
        points=args.points,
        min_len=args.min_len,
        max_len=args.max_len,
    )
    _write(dumps_raw(generate_raw(cfg)), args.output)
    return EXIT_OK


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise InvalidParams(f"--points must be comma-separated integers, got {text!r}") from None
    if not sizes or min(sizes) < 0:
        raise InvalidParams("--points needs at least one nonnegative size")
    return sizes


def cmd_bench(args: argparse.Namespace) -> int:
    roadmap = load_roadmap(args.roadmap)
    rng = np.random.default_rng(args.seed)
    lines = ["M,ms_total,ms_solve"]
    for M in _parse_sizes(args.points):
        inst = random_instance_on(roadmap, M, rng)
        t0 = time.perf_counter()
        res = solve_matching(inst)
        total = (time.perf_counter() - t0) * 1e3
        lines.append(f"{M},{total:.3f},{res.timings_ms['solve']:.3f}")
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roadmatch", description="Minimum-cost bipartite matching on roadmaps."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("file")
    p.add_argument("--output")
    p.add_argument("--audit", action="store_true", help="recheck cost from roadmap distances")
    p.add_argument("--oracle", action="store_true", help="compare with the Hungarian method (small M)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", help="write a random connected instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--roads", type=int, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--min-len", type=float, default=0.1)
    p.add_argument("--max-len", type=float, default=10.0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="time the pipeline for several point counts")
    p.add_argument("--roadmap", required=True, help="instance file; its points are ignored")
    p.add_argument("--points", required=True, help="comma-separated M values")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OracleMismatch as exc:
        print(f"error: {exc} (expected {exc.expected!r}, got {exc.actual!r})", file=sys.stderr)
        return EXIT_INTERNAL
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
