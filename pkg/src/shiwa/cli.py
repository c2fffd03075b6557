"""Command line: run benchmark grids, score results, explain routing.

Exit codes: 0 success, 1 runtime failure (I/O, malformed input files,
scoring errors), 2 usage errors (unknown names, invalid descriptor flags).
The default output directory comes from SHIWA_OUTPUT_DIR when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .core import Domain, InvalidDescriptor, ProblemDescriptor, ShiwaError
from .selector import select
from .benchmark import (BENCHMARKS, OPTIMIZERS, benchmark_names, function_names,
                        grid_cells, matrix_to_csv, matrix_to_svg, optimizer_names,
                        read_results, run_experiment, run_seeds, score,
                        write_results)


class UsageError(Exception):
    pass


def _output_dir(arg: str | None) -> Path:
    return Path(arg or os.environ.get("SHIWA_OUTPUT_DIR") or ".")


def _parse_optimizers(text: str) -> list[str]:
    names = [part.strip() for part in text.split(",") if part.strip()]
    if not names:
        raise UsageError("no optimizer names given")
    unknown = [name for name in names if name not in OPTIMIZERS]
    if unknown:
        raise UsageError(f"unknown optimizers {', '.join(unknown)}; "
                         f"valid names: {', '.join(optimizer_names())}")
    return names


def _check_benchmark(name: str) -> str:
    if name not in BENCHMARKS:
        raise UsageError(f"unknown benchmark {name!r}; "
                         f"valid names: {', '.join(benchmark_names())}")
    return name


def _manifest(args, cells) -> dict:
    return {
        "version": __version__,
        "config": {
            "benchmark": args.benchmark,
            "optimizers": args.optims_list,
            "repetitions": args.reps,
            "seed": args.seed,
            "timeout": args.timeout,
            "workers": args.workers,
        },
        "cells": [
            {
                "index": index,
                "function": cell.function,
                "dimension": cell.dimension,
                "budget": cell.budget,
                "parallelism": cell.parallelism,
                "rotated": cell.rotated,
                "noisy": cell.noisy,
                "seeds": [
                    dict(zip(("repetition", "instance_seed", "optimizer_seed"),
                             (rep, *run_seeds(args.seed, index, rep))))
                    for rep in range(args.reps)
                ],
            }
            for index, cell in enumerate(cells)
        ],
    }


def cmd_run(args) -> int:
    if args.from_manifest:
        with open(args.from_manifest) as handle:
            config = json.load(handle)["config"]
        args.benchmark = config["benchmark"]
        args.optims = ",".join(config["optimizers"])
        args.reps = config["repetitions"]
        args.seed = config["seed"]
        args.timeout = config["timeout"]
        args.workers = config["workers"]
    if args.benchmark is None or args.optims is None:
        raise UsageError("run requires --benchmark and --optims "
                         "(or --from-manifest)")
    _check_benchmark(args.benchmark)
    args.optims_list = _parse_optimizers(args.optims)
    if args.reps < 1:
        raise UsageError("--reps must be >= 1")

    out = _output_dir(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = run_experiment(args.benchmark, args.optims_list, args.reps, args.seed,
                          timeout=args.timeout, workers=args.workers)
    results_path = out / "results.csv"
    write_results(rows, results_path)
    manifest_path = out / "manifest.json"
    with open(manifest_path, "w") as handle:
        json.dump(_manifest(args, grid_cells(args.benchmark)), handle, indent=1)
        handle.write("\n")
    failures = sum(row.status != "ok" for row in rows)
    print(f"wrote {len(rows)} rows ({failures} failed) to {results_path}")
    print(f"wrote manifest to {manifest_path}")
    return 0


def cmd_score(args) -> int:
    rows = read_results(args.results)
    if not rows:
        raise ValueError("results file has no data rows")
    matrix = score(rows)
    out = Path(args.out) if args.out else Path(args.results).parent
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "scores.csv"
    svg_path = out / "scores.svg"
    matrix_to_csv(matrix, csv_path)
    matrix_to_svg(matrix, svg_path)
    for place, (name, mean) in enumerate(matrix.ranking(), start=1):
        print(f"{place}. {name} {mean:.4f}")
    print(f"wrote {csv_path} and {svg_path}")
    return 0


def cmd_explain(args) -> int:
    try:
        if args.discrete:
            domain = Domain.categorical([args.dim])
            descriptor = ProblemDescriptor.from_domain(
                domain, budget=args.budget, parallelism=args.workers,
                noisy=args.noisy)
        else:
            descriptor = ProblemDescriptor.for_continuous(
                dimension=args.dim, budget=args.budget,
                parallelism=args.workers, noisy=args.noisy)
    except (InvalidDescriptor, ValueError) as error:
        raise UsageError(f"rejected: {error}") from None
    print(select(descriptor).explanation())
    return 0


def cmd_list(args) -> int:
    print("benchmarks:")
    for name in benchmark_names():
        grid = BENCHMARKS[name]
        print(f"  {name}  d={list(grid.dimensions)} T={list(grid.budgets)} "
              f"workers={grid.workers} noisy={str(grid.noisy).lower()}")
    print("optimizers:")
    for name in optimizer_names():
        print(f"  {name}")
    print("functions:")
    for name in function_names():
        print(f"  {name}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiwa", description="benchmark and explain black-box optimizers")
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run a benchmark grid")
    run.add_argument("--benchmark", help="benchmark grid name")
    run.add_argument("--optims", help="comma-separated optimizer names")
    run.add_argument("--reps", type=int, default=5, help="repetitions per cell")
    run.add_argument("--seed", type=int, default=0, help="master seed")
    run.add_argument("--timeout", type=float, default=300.0,
                     help="per-run wall-clock budget in seconds")
    run.add_argument("--workers", type=int, default=1, help="worker threads")
    run.add_argument("--out", help="output directory")
    run.add_argument("--from-manifest", help="rerun the config of a manifest.json")
    run.set_defaults(handler=cmd_run)

    scorecmd = commands.add_parser("score", help="score a results CSV")
    scorecmd.add_argument("results", help="path to results.csv")
    scorecmd.add_argument("--out", help="output directory (default: alongside input)")
    scorecmd.set_defaults(handler=cmd_score)

    explain = commands.add_parser("explain", help="show the routing for a descriptor")
    explain.add_argument("--dim", type=int, required=True,
                         help="dimension (label count with --discrete)")
    explain.add_argument("--budget", type=int, required=True)
    explain.add_argument("--workers", type=int, default=1)
    explain.add_argument("--noisy", action="store_true")
    explain.add_argument("--discrete", action="store_true",
                         help="one categorical variable with --dim labels")
    explain.set_defaults(handler=cmd_explain)

    listing = commands.add_parser("list", help="enumerate benchmarks and optimizers")
    listing.set_defaults(handler=cmd_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as error:
        print(f"shiwa: {error}", file=sys.stderr)
        return 2
    except (ShiwaError, ValueError, OSError, json.JSONDecodeError, KeyError) as error:
        print(f"shiwa: {error}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
