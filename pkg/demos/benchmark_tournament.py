"""A small benchmark tournament, scored pairwise and rendered to SVG.

yabbob-mini is the reduced grid (21 functions, d in {2, 10}, budgets up to
800, plain and rotated), small enough to race a few optimizers in about a
minute.  Runs are seeded from (master seed, cell index, repetition), so the
whole experiment replays bit-for-bit.
"""

from pathlib import Path

from shiwa.benchmark import (matrix_to_csv, matrix_to_svg, run_experiment,
                             score, write_results)

rows = run_experiment("yabbob-mini", ["cma", "cobyla", "random-search"],
                      repetitions=1, seed=2024)
failed = [row for row in rows if row.status != "ok"]
print(f"{len(rows)} runs, {len(failed)} failed")

matrix = score(rows)
for place, (name, mean) in enumerate(matrix.ranking(), start=1):
    print(f"{place}. {name}  {mean:.4f}")

# the matrix entry [i, j] is the fraction of shared instances optimizer i
# won against optimizer j (ties count half)
print("win-rate matrix:")
print(matrix.optimizers)
print(matrix.values.round(3))

out = Path("tournament_out")
out.mkdir(exist_ok=True)
write_results(rows, out / "results.csv")
matrix_to_csv(matrix, out / "scores.csv")
matrix_to_svg(matrix, out / "scores.svg")
print("wrote", sorted(p.name for p in out.iterdir()))
