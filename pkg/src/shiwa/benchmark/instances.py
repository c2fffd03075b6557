"""Problem instances and the benchmark grids.

An instance fixes one translated (and optionally rotated, optionally noisy)
copy of a catalog function: evaluation computes f(R(x - t)) with the
translation t drawn from N(0, Id) and R a Haar-random orthogonal matrix.
Noisy instances add unit-variance Gaussian noise to every evaluation, drawn
from a counter-based generator so each call has its own deterministic
sub-seed; the noise-free value of any point stays queryable for reporting.

Values are clamped to ±1e300: the ask/tell contract requires finite tells
and a handful of catalog functions overflow at the extreme probe points
line searches can emit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..core import DimensionMismatch, ShiwaError
from .functions import TestFunction, function_names, get_function

__all__ = [
    "GridViolation", "BenchmarkGrid", "BENCHMARKS", "benchmark_names",
    "ProblemInstance", "make_instance", "evaluate", "grid_cells", "Cell",
]

_VALUE_CEILING = 1e300

_STANDARD_BUDGETS = (50, 200, 800, 3200, 12800)


class GridViolation(ShiwaError):
    """Instance parameters outside the named benchmark's grid."""


@dataclass(frozen=True)
class Cell:
    """One grid cell: everything that defines an instance family."""

    benchmark: str
    function: str
    dimension: int
    budget: int
    parallelism: int
    rotated: bool
    noisy: bool


@dataclass(frozen=True)
class BenchmarkGrid:
    """Cartesian experiment grid of one named benchmark."""

    name: str
    dimensions: tuple[int, ...]
    budgets: tuple[int, ...]
    noisy: bool = False
    rotations: tuple[bool, ...] = (False, True)
    workers: int = 1  # per-cell parallelism, capped at the cell's budget
    functions: tuple[str, ...] = tuple(function_names())

    def parallelism_for(self, budget: int) -> int:
        return min(self.workers, budget)

    def cells(self) -> list[Cell]:
        out = []
        for function in self.functions:
            for dimension in self.dimensions:
                for budget in self.budgets:
                    for rotated in self.rotations:
                        out.append(Cell(self.name, function, dimension, budget,
                                        self.parallelism_for(budget), rotated, self.noisy))
        return out

    def validate(self, function_name: str, d: int, T: int, p: int,
                 rotated: bool) -> None:
        problems = []
        if function_name not in self.functions:
            problems.append(f"function {function_name!r} is not in the suite")
        if d not in self.dimensions:
            problems.append(f"dimension {d} not in {self.dimensions}")
        if T not in self.budgets:
            problems.append(f"budget {T} not in {self.budgets}")
        if p != self.parallelism_for(T):
            problems.append(f"parallelism {p} != {self.parallelism_for(T)}")
        if rotated not in self.rotations:
            problems.append(f"rotated={rotated} not available")
        if problems:
            raise GridViolation(f"{self.name}: " + "; ".join(problems))


BENCHMARKS: dict[str, BenchmarkGrid] = {
    grid.name: grid
    for grid in (
        BenchmarkGrid("yabbob", dimensions=(2, 10, 50), budgets=_STANDARD_BUDGETS),
        BenchmarkGrid("yabigbbob", dimensions=(2, 10, 50), budgets=(40000, 80000)),
        BenchmarkGrid("yahdbbob", dimensions=(100, 1000, 3000), budgets=_STANDARD_BUDGETS),
        BenchmarkGrid("yanoisybbob", dimensions=(2, 10, 50), budgets=_STANDARD_BUDGETS,
                      noisy=True),
        BenchmarkGrid("yaparabbob", dimensions=(2, 10, 50), budgets=_STANDARD_BUDGETS,
                      workers=100),
        BenchmarkGrid("yabbob-mini", dimensions=(2, 10), budgets=(50, 200, 800)),
    )
}


def benchmark_names() -> list[str]:
    return list(BENCHMARKS)


def grid_cells(benchmark_name: str) -> list[Cell]:
    try:
        grid = BENCHMARKS[benchmark_name]
    except KeyError:
        known = ", ".join(benchmark_names())
        raise KeyError(f"unknown benchmark {benchmark_name!r}; known: {known}") from None
    return grid.cells()


def _haar_rotation(d: int, rng: np.random.Generator) -> np.ndarray:
    # QR with the sign fix that makes Q Haar-distributed
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


@dataclass
class ProblemInstance:
    """A seeded, translated, optionally rotated/noisy test problem."""

    benchmark: str
    function: TestFunction
    dimension: int
    budget: int
    parallelism: int
    rotated: bool
    noisy: bool
    seed: int
    translation: np.ndarray = field(repr=False)
    rotation: np.ndarray | None = field(repr=False)
    noise_sigma: float = 1.0
    num_evaluations: int = 0

    @classmethod
    def from_seed(cls, benchmark: str, function: TestFunction, dimension: int,
                  budget: int, parallelism: int, rotated: bool, noisy: bool,
                  seed: int) -> "ProblemInstance":
        # second entropy word is nonzero: SeedSequence collapses trailing
        # zeros, and [seed, 0] would alias the stream of default_rng(seed)
        rng = np.random.default_rng(np.random.SeedSequence([int(seed) % (1 << 64), 1]))
        translation = rng.standard_normal(dimension)
        rotation = _haar_rotation(dimension, rng) if rotated else None
        return cls(benchmark, function, dimension, budget, parallelism, rotated,
                   noisy, int(seed) % (1 << 64), translation, rotation)

    def true_value(self, x: np.ndarray) -> float:
        """Noise-free objective at x; does not consume an evaluation."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dimension,):
            raise DimensionMismatch(
                f"expected a point of dimension {self.dimension}, got shape {x.shape}")
        z = x - self.translation
        if self.rotation is not None:
            z = self.rotation @ z
        value = self.function(z)
        if not np.isfinite(value) or abs(value) > _VALUE_CEILING:
            value = _VALUE_CEILING if (value > 0 or not np.isfinite(value)) else -_VALUE_CEILING
        return float(value)

    def _noise(self, index: int) -> float:
        # one counter block per call, spaced so draws never straddle blocks
        bits = np.random.Generator(np.random.Philox(key=self.seed, counter=[0, 0, index, 0]))
        return float(bits.standard_normal())

    def evaluate(self, x: np.ndarray) -> float:
        """Objective at x, plus per-call seeded noise on noisy instances."""
        value = self.true_value(x)
        if self.noisy:
            value += self.noise_sigma * self._noise(self.num_evaluations)
        self.num_evaluations += 1
        return value


def make_instance(benchmark_name: str, function_name: str, d: int, T: int, p: int,
                  rotated: bool, seed: int) -> ProblemInstance:
    """Build an instance after validating the parameters against the grid."""
    try:
        grid = BENCHMARKS[benchmark_name]
    except KeyError:
        known = ", ".join(benchmark_names())
        raise GridViolation(f"unknown benchmark {benchmark_name!r}; known: {known}") from None
    grid.validate(function_name, d, T, p, rotated)
    return ProblemInstance.from_seed(benchmark_name, get_function(function_name),
                                     d, T, p, rotated, grid.noisy, seed)


def evaluate(instance: ProblemInstance, x: np.ndarray) -> float:
    return instance.evaluate(x)
