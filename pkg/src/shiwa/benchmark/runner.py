"""Experiment driver: run optimizers over a benchmark grid and persist rows.

Every (cell, repetition) draws one instance seed and one optimizer seed from
SeedSequence([master, cell_index, repetition]); all optimizers in that pair
share both, so pairwise comparisons are paired and reruns are bit-identical.
Reported loss is always the noise-free objective at the recommendation.

Failures stay local: a run that times out or raises records a row with
status "timeout" or "error" and an empty loss, and the experiment continues.
"""

from __future__ import annotations

import csv
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from ..core import Optimizer, ProblemDescriptor
from ..local_search import make_cobyla_like, make_powell
from ..optimizers.cma import make_cma
from ..optimizers.de import make_de
from ..optimizers.evolution import make_one_plus_one_es, make_tbpsa
from ..optimizers.oneshot import make_metarecentering, make_random_search
from ..optimizers.pso import make_pso
from ..selector import select
from .functions import get_function
from .instances import BENCHMARKS, Cell, ProblemInstance, benchmark_names

__all__ = [
    "RunRecord", "CSV_COLUMNS", "OPTIMIZERS", "optimizer_names",
    "run_seeds", "run_one", "run_experiment", "write_results", "read_results",
]

CSV_COLUMNS = ("benchmark", "function", "dimension", "budget", "parallelism",
               "rotated", "noisy", "optimizer", "seed", "loss", "status")

_STATUSES = ("ok", "timeout", "error")


@dataclass(frozen=True)
class RunRecord:
    """One optimizer run on one instance; loss is None unless status is ok."""

    benchmark: str
    function: str
    dimension: int
    budget: int
    parallelism: int
    rotated: bool
    noisy: bool
    optimizer: str
    seed: int
    loss: float | None
    status: str


def _descriptor(cell: Cell) -> ProblemDescriptor:
    return ProblemDescriptor.for_continuous(
        dimension=cell.dimension, budget=cell.budget,
        parallelism=cell.parallelism, noisy=cell.noisy)


def _build_shiwa(desc: ProblemDescriptor, seed: int) -> Optimizer:
    return select(desc).build(seed)


OPTIMIZERS = {
    "shiwa": _build_shiwa,
    "cma": lambda desc, seed: make_cma(desc.dimension, seed, budget=desc.budget),
    "de": lambda desc, seed: make_de(desc.dimension, seed, budget=desc.budget),
    "pso": lambda desc, seed: make_pso(desc.dimension, seed, budget=desc.budget),
    "oneplusone": lambda desc, seed: make_one_plus_one_es(desc.dimension, seed,
                                                          budget=desc.budget),
    "cobyla": lambda desc, seed: make_cobyla_like(desc.dimension, seed,
                                                  budget=desc.budget),
    "powell": lambda desc, seed: make_powell(desc.dimension, seed, budget=desc.budget),
    "tbpsa": lambda desc, seed: make_tbpsa(desc.dimension, seed, budget=desc.budget),
    "metarecentering": lambda desc, seed: make_metarecentering(
        desc.dimension, desc.budget, desc.parallelism, seed),
    "random-search": lambda desc, seed: make_random_search(desc.dimension, seed,
                                                           budget=desc.budget),
}


def optimizer_names() -> list[str]:
    return list(OPTIMIZERS)


def run_seeds(master_seed: int, cell_index: int, repetition: int) -> tuple[int, int]:
    """(instance_seed, optimizer_seed) for one (cell, repetition) pair."""
    # indices offset by one: SeedSequence collapses trailing zero entropy
    # words, so [m, 0, 0] would alias plain SeedSequence(m)
    sequence = np.random.SeedSequence(
        [int(master_seed) % (1 << 64), int(cell_index) + 1, int(repetition) + 1])
    state = sequence.generate_state(2, dtype=np.uint64)
    return int(state[0]), int(state[1])


def run_one(cell: Cell, optimizer_name: str, instance_seed: int,
            optimizer_seed: int, timeout: float = 300.0) -> RunRecord:
    """Drive one optimizer to the cell budget; never raises for run failures."""
    instance = ProblemInstance.from_seed(
        cell.benchmark, get_function(cell.function), cell.dimension, cell.budget,
        cell.parallelism, cell.rotated, cell.noisy, instance_seed)
    meta = dict(benchmark=cell.benchmark, function=cell.function,
                dimension=cell.dimension, budget=cell.budget,
                parallelism=cell.parallelism, rotated=cell.rotated,
                noisy=cell.noisy, optimizer=optimizer_name, seed=instance_seed)
    deadline = time.monotonic() + timeout
    try:
        optimizer = OPTIMIZERS[optimizer_name](_descriptor(cell), optimizer_seed)
        remaining = cell.budget
        while remaining > 0:
            if time.monotonic() > deadline:
                return RunRecord(**meta, loss=None, status="timeout")
            batch = [optimizer.ask() for _ in range(min(cell.parallelism, remaining))]
            for candidate in batch:
                optimizer.tell(candidate, instance.evaluate(candidate.point))
            remaining -= len(batch)
        loss = instance.true_value(optimizer.recommend().point)
    except Exception:
        return RunRecord(**meta, loss=None, status="error")
    return RunRecord(**meta, loss=loss, status="ok")


def run_experiment(benchmark_name: str, optimizer_names: list[str],
                   repetitions: int, seed: int, *, timeout: float = 300.0,
                   workers: int = 1) -> list[RunRecord]:
    """All grid cells x repetitions x optimizers, ordered by cell index."""
    if benchmark_name not in BENCHMARKS:
        known = ", ".join(benchmark_names())
        raise KeyError(f"unknown benchmark {benchmark_name!r}; known: {known}")
    unknown = [n for n in optimizer_names if n not in OPTIMIZERS]
    if unknown:
        known = ", ".join(OPTIMIZERS)
        raise KeyError(f"unknown optimizers {unknown}; known: {known}")
    if repetitions < 1:
        raise ValueError(f"repetitions must be >= 1, got {repetitions}")

    cells = BENCHMARKS[benchmark_name].cells()

    def run_cell(indexed: tuple[int, Cell]) -> list[RunRecord]:
        index, cell = indexed
        rows = []
        for repetition in range(repetitions):
            instance_seed, optimizer_seed = run_seeds(seed, index, repetition)
            for name in optimizer_names:
                rows.append(run_one(cell, name, instance_seed, optimizer_seed,
                                    timeout))
        return rows

    if workers > 1:
        # runs are independent; map() keeps cell order so merging is deterministic
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_cell = list(pool.map(run_cell, enumerate(cells)))
    else:
        per_cell = [run_cell(item) for item in enumerate(cells)]
    return [row for rows in per_cell for row in rows]


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_results(rows: list[RunRecord], path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_format_value(getattr(row, f.name))
                             for f in fields(RunRecord)])


def _parse_bool(text: str, line: int, column: str) -> bool:
    if text == "true":
        return True
    if text == "false":
        return False
    raise ValueError(f"line {line}: column {column!r} must be true/false, got {text!r}")


def read_results(path) -> list[RunRecord]:
    """Parse a results CSV; raises ValueError naming the offending line."""
    rows = []
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != list(CSV_COLUMNS):
            raise ValueError(f"line 1: expected columns {','.join(CSV_COLUMNS)}")
        for line, record in enumerate(reader, start=2):
            if len(record) != len(CSV_COLUMNS):
                raise ValueError(f"line {line}: expected {len(CSV_COLUMNS)} fields, "
                                 f"got {len(record)}")
            (benchmark, function, dimension, budget, parallelism, rotated,
             noisy, optimizer, seed_text, loss_text, status) = record
            try:
                row = RunRecord(
                    benchmark=benchmark, function=function,
                    dimension=int(dimension), budget=int(budget),
                    parallelism=int(parallelism),
                    rotated=_parse_bool(rotated, line, "rotated"),
                    noisy=_parse_bool(noisy, line, "noisy"),
                    optimizer=optimizer, seed=int(seed_text),
                    loss=float(loss_text) if loss_text else None,
                    status=status)
            except ValueError as error:
                if str(error).startswith("line "):
                    raise
                raise ValueError(f"line {line}: {error}") from None
            if row.status not in _STATUSES:
                raise ValueError(f"line {line}: unknown status {row.status!r}")
            if (row.loss is None) != (row.status != "ok"):
                raise ValueError(f"line {line}: loss must be present exactly "
                                 f"for status ok")
            rows.append(row)
    return rows
