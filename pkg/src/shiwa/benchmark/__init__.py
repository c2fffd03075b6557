"""Benchmark suite: function catalog, seeded instances, runner, and scoring."""

from .functions import FUNCTIONS, TestFunction, function_names, get_function
from .instances import (BENCHMARKS, BenchmarkGrid, Cell, GridViolation,
                        ProblemInstance, benchmark_names, evaluate, grid_cells,
                        make_instance)
from .runner import (CSV_COLUMNS, OPTIMIZERS, RunRecord, optimizer_names,
                     read_results, run_experiment, run_one, run_seeds,
                     write_results)
from .scoring import (NoOverlap, ScoreMatrix, matrix_from_csv, matrix_to_csv,
                      matrix_to_svg, score)

__all__ = [
    "FUNCTIONS", "TestFunction", "function_names", "get_function",
    "BENCHMARKS", "BenchmarkGrid", "Cell", "GridViolation", "ProblemInstance",
    "benchmark_names", "evaluate", "grid_cells", "make_instance",
    "CSV_COLUMNS", "OPTIMIZERS", "RunRecord", "optimizer_names",
    "read_results", "run_experiment", "run_one", "run_seeds", "write_results",
    "NoOverlap", "ScoreMatrix", "matrix_from_csv", "matrix_to_csv",
    "matrix_to_svg", "score",
]
