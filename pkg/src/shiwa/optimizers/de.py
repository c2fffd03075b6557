"""Differential evolution with binomial crossover."""

from __future__ import annotations

import numpy as np

from ..core import Candidate, Domain, DomainMismatch, Optimizer

__all__ = ["DifferentialEvolution", "make_de"]


class DifferentialEvolution(Optimizer):
    """Steady-state DE with a current-to-best donor and binomial crossover.

    The donor for slot i is x_i + F1*(x_a - x_b) + F2*(best - x_i) with a, b
    random distinct population members and best the best point observed so
    far; a plain rand/1 donor stalls far from the optimum at these budgets
    (measured: ~20 on the 50-d sphere at 12800 evaluations, versus ~1e-2
    for this donor).  Defaults F1=F2=0.8, CR=0.5, population 30.

    The first generation of asks returns the initial population itself
    (standard normal draws); from then on each ask produces the trial vector
    for the next population slot, and a tell replaces the slot's incumbent
    when the trial is no worse.
    """

    def __init__(self, domain, *, budget=None, seed=None, popsize=30,
                 f1=0.8, f2=0.8, crossover=0.5):
        if not domain.is_metrizable():
            raise DomainMismatch("differential evolution requires a continuous domain")
        super().__init__(domain, budget=budget, seed=seed)
        self.popsize = popsize
        self.f1 = f1
        self.f2 = f2
        self.crossover = crossover
        self.population = [None] * popsize  # type: list[np.ndarray | None]
        self.values = [np.inf] * popsize
        self._cursor = 0  # next slot to produce a candidate for

    def _ask(self) -> Candidate:
        slot = self._cursor
        self._cursor = (self._cursor + 1) % self.popsize
        if self.population[slot] is None or any(p is None for p in self.population):
            point = self.rng.standard_normal(self.dimension)
        else:
            base = self.population[slot]
            best, _, _ = self.archive.best_observation()
            a, b = self._pick_distinct(slot, 2)
            donor = (base + self.f1 * (self.population[a] - self.population[b])
                     + self.f2 * (best - base))
            cross = self.rng.random(self.dimension) < self.crossover
            cross[self.rng.integers(self.dimension)] = True  # at least one donor gene
            point = np.where(cross, donor, base)
        cand = self._candidate(point)
        cand.meta["slot"] = slot
        return cand

    def _pick_distinct(self, exclude: int, count: int) -> list[int]:
        pool = [i for i in range(self.popsize) if i != exclude]
        idx = self.rng.choice(len(pool), size=count, replace=False)
        return [pool[i] for i in idx]

    def _tell(self, candidate, value, asked):
        if not asked:
            return  # archived only; the population keeps its own bookkeeping
        slot = candidate.meta.get("slot", 0)
        if self.population[slot] is None or value <= self.values[slot]:
            self.population[slot] = candidate.point.copy()
            self.values[slot] = value


def make_de(d: int, seed=None, *, budget=None) -> DifferentialEvolution:
    """DE with the classical defaults F1=F2=0.8, CR=0.5, population 30."""
    return DifferentialEvolution(Domain.continuous(d), budget=budget, seed=seed)
