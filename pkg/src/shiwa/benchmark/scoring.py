"""Pairwise win-rate scoring of result tables.

W[o][o'] is the frequency, over instances both optimizers completed, of o
beating o', with ties worth half a point. Wins are accumulated as integer
half-points and each lower-triangle entry is written as 1 - W[upper], so the
antisymmetry W[o][o'] + W[o'][o] = 1 holds exactly in floating point, not
just approximately.

Optimizers are compared per instance: two ok rows match when every
problem-defining column, including the instance seed, agrees. Pairs with no
shared instances score NaN and drop out of mean scores. Failed runs (status
timeout or error) never enter a comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core import ShiwaError
from .runner import RunRecord

__all__ = ["NoOverlap", "ScoreMatrix", "score", "matrix_to_csv", "matrix_from_csv",
           "matrix_to_svg"]


class NoOverlap(ShiwaError):
    """Fewer than two optimizers share any completed instance."""


@dataclass(frozen=True)
class ScoreMatrix:
    """Win frequencies, shared-instance counts, and the derived ranking."""

    optimizers: tuple[str, ...]
    values: np.ndarray  # win frequency, NaN where a pair never overlapped
    counts: np.ndarray  # number of shared instances behind each entry

    def mean_score(self, name: str) -> float:
        """Row average over opponents with at least one shared instance."""
        i = self.optimizers.index(name)
        row = np.delete(self.values[i], i)
        present = ~np.isnan(row)
        return float(np.mean(row[present])) if present.any() else math.nan

    def ranking(self) -> list[tuple[str, float]]:
        """(name, mean score), best first; unscored optimizers sink to the end."""
        scored = [(name, self.mean_score(name)) for name in self.optimizers]
        return sorted(scored,
                      key=lambda item: (math.isnan(item[1]), -item[1]
                                        if not math.isnan(item[1]) else 0.0, item[0]))


def _instance_key(row: RunRecord) -> tuple:
    return (row.benchmark, row.function, row.dimension, row.budget,
            row.parallelism, row.rotated, row.noisy, row.seed)


def score(rows: list[RunRecord]) -> ScoreMatrix:
    """Pairwise win matrix over all completed runs; first-seen optimizer order."""
    optimizers: list[str] = []
    losses: dict[tuple, dict[str, float]] = {}
    for row in rows:
        if row.optimizer not in optimizers:
            optimizers.append(row.optimizer)
        if row.status != "ok":
            continue
        per_instance = losses.setdefault(_instance_key(row), {})
        # duplicate (instance, optimizer) rows keep the first loss seen
        per_instance.setdefault(row.optimizer, row.loss)
    if len(optimizers) < 2:
        raise NoOverlap("scoring needs at least two optimizers")

    k = len(optimizers)
    index = {name: i for i, name in enumerate(optimizers)}
    half_points = np.zeros((k, k), dtype=np.int64)
    counts = np.zeros((k, k), dtype=np.int64)
    for per_instance in losses.values():
        present = sorted(index[name] for name in per_instance)
        for a in range(len(present)):
            for b in range(a + 1, len(present)):
                i, j = present[a], present[b]
                loss_i = per_instance[optimizers[i]]
                loss_j = per_instance[optimizers[j]]
                if loss_i < loss_j:
                    half_points[i, j] += 2
                elif loss_i == loss_j:
                    half_points[i, j] += 1
                else:
                    half_points[j, i] += 2
                counts[i, j] += 1
                counts[j, i] += 1
    if not counts.any():
        raise NoOverlap("no two optimizers completed the same instance")

    values = np.full((k, k), math.nan)
    np.fill_diagonal(values, 0.5)
    for i in range(k):
        for j in range(i + 1, k):
            n = counts[i, j]
            if n == 0:
                continue
            upper = half_points[i, j] / (2.0 * n)
            values[i, j] = upper
            values[j, i] = 1.0 - upper
    return ScoreMatrix(tuple(optimizers), values, counts)


def matrix_to_csv(matrix: ScoreMatrix, path) -> None:
    with open(path, "w", newline="") as handle:
        handle.write("optimizer," + ",".join(matrix.optimizers) + "\n")
        for i, name in enumerate(matrix.optimizers):
            cells = (repr(float(v)) for v in matrix.values[i])
            handle.write(name + "," + ",".join(cells) + "\n")


def matrix_from_csv(path) -> ScoreMatrix:
    """Counts are not persisted; they read back as zeros."""
    with open(path, newline="") as handle:
        lines = handle.read().splitlines()
    if not lines:
        raise ValueError("line 1: empty score matrix file")
    header = lines[0].split(",")
    if header[:1] != ["optimizer"] or len(header) < 3:
        raise ValueError("line 1: expected 'optimizer' plus >= 2 name columns")
    names = tuple(header[1:])
    values = np.full((len(names), len(names)), math.nan)
    if len(lines) - 1 != len(names):
        raise ValueError(f"line {len(lines)}: expected {len(names)} data rows")
    for i, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != len(names) + 1 or parts[0] != names[i - 2]:
            raise ValueError(f"line {i}: row label/width mismatch")
        try:
            values[i - 2] = [float(p) for p in parts[1:]]
        except ValueError:
            raise ValueError(f"line {i}: non-numeric entry") from None
    return ScoreMatrix(names, values, np.zeros_like(values, dtype=np.int64))


_CELL = 30
_LEFT = 170
_TOP = 150


def _shade(value: float) -> str:
    # 0 -> dark, 1 -> light
    level = int(round(255 * min(max(value, 0.0), 1.0)))
    return f"#{level:02x}{level:02x}{level:02x}"


def matrix_to_svg(matrix: ScoreMatrix, path) -> None:
    """Grayscale heatmap, rows and columns ordered best-first by mean score.

    Every cell rect carries data-row/data-col/data-value attributes so the
    rendered values can be checked against the CSV without a raster parser.
    """
    order = [name for name, _ in matrix.ranking()]
    k = len(order)
    width = _LEFT + _CELL * k + 20
    height = _TOP + _CELL * k + 20
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<style>text{font-family:monospace;font-size:11px;}</style>',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for col, name in enumerate(order):
        x = _LEFT + col * _CELL + _CELL // 2
        parts.append(f'<text x="{x}" y="{_TOP - 6}" '
                     f'transform="rotate(-60 {x} {_TOP - 6})">{name}</text>')
    source = {name: i for i, name in enumerate(matrix.optimizers)}
    for row, row_name in enumerate(order):
        y = _TOP + row * _CELL
        mean = matrix.mean_score(row_name)
        label = f"{row_name} ({mean:.3f})" if not math.isnan(mean) else row_name
        parts.append(f'<text x="4" y="{y + _CELL - 10}">{label}</text>')
        for col, col_name in enumerate(order):
            value = float(matrix.values[source[row_name], source[col_name]])
            x = _LEFT + col * _CELL
            if math.isnan(value):
                fill, text = "white", "nan"
                extra = ' stroke="#cc0000" stroke-dasharray="2,2"'
            else:
                fill, text = _shade(value), repr(value)
                extra = ' stroke="#888888"'
            parts.append(
                f'<rect x="{x}" y="{y}" width="{_CELL}" height="{_CELL}" '
                f'fill="{fill}"{extra} data-row="{row_name}" '
                f'data-col="{col_name}" data-value="{text}"/>')
    parts.append("</svg>")
    with open(path, "w") as handle:
        handle.write("\n".join(parts) + "\n")
