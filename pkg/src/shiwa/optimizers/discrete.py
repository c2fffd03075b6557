"""(1+1) evolutionary algorithms for domains with categorical variables.

Candidates are reported in the softmax-encoded space as one-hot blocks so
that identical assignments share an exact archive key, but mutation acts
directly on the assignments; no stochastic decoding is involved.
"""

from __future__ import annotations

import numpy as np

from ..core import Candidate, Categorical, Continuous, Domain, DomainMismatch, Optimizer
from ..transforms import block_slices

__all__ = ["DiscreteOnePlusOne", "make_fastga", "make_discrete_uniform_mix", "onehot_encode"]


def onehot_encode(domain: Domain, assignment) -> np.ndarray:
    """Encode an assignment with 1.0 at each categorical variable's label."""
    point = np.zeros(domain.encoded_dimension)
    for var, value, sl in zip(domain.variables, assignment, block_slices(domain)):
        if isinstance(var, Continuous):
            point[sl.start] = float(value)
        else:
            point[sl.start + int(value)] = 1.0
    return point


class DiscreteOnePlusOne(Optimizer):
    """Elitist (1+1) EA with a per-generation mutation rate r/n.

    `mutation` selects how the strength r in {1, ..., max(1, n//2)} is drawn
    each generation: "uniform_mix" takes it uniformly, "fastga" from a
    power law P(r) proportional to r^(-beta) with beta=1.5 (heavy tail, so
    occasional large jumps).  Mutated categorical variables resample
    uniformly among the other categories; mutated continuous variables (in
    mixed domains) redraw from the standard normal.

    With `recombine_with_best`, each child starts from a uniform crossover
    of the parent with the best archived assignment before mutation.
    """

    FASTGA_BETA = 1.5

    def __init__(self, domain, *, budget=None, seed=None, mutation="uniform_mix",
                 recombine_with_best=False):
        if domain.is_metrizable():
            raise DomainMismatch("this EA needs at least one categorical variable")
        super().__init__(domain, budget=budget, seed=seed)
        self.num_variables = domain.num_variables
        self.recombine_with_best = recombine_with_best
        self.parent: tuple | None = None
        self.parent_value: float | None = None
        n = self.num_variables
        self.max_strength = max(1, n // 2)
        if mutation == "uniform_mix":
            pmf = np.ones(self.max_strength)
        elif mutation == "fastga":
            pmf = np.arange(1, self.max_strength + 1, dtype=float) ** -self.FASTGA_BETA
        else:
            raise ValueError(f"unknown mutation scheme {mutation!r}")
        self._strength_cdf = np.cumsum(pmf / pmf.sum())
        self.last_rate: float | None = None

    # -- assignment helpers ---------------------------------------------------

    def _random_assignment(self) -> tuple:
        values = []
        for var in self.domain.variables:
            if isinstance(var, Categorical):
                values.append(int(self.rng.integers(var.cardinality)))
            else:
                values.append(float(self.rng.standard_normal()))
        return tuple(values)

    def _mutate(self, base: tuple) -> tuple:
        r = 1 + int(np.searchsorted(self._strength_cdf, self.rng.random(), side="right"))
        r = min(r, self.max_strength)
        rate = r / self.num_variables
        self.last_rate = rate
        child = list(base)
        for i, var in enumerate(self.domain.variables):
            if self.rng.random() >= rate:
                continue
            if isinstance(var, Categorical):
                shift = 1 + int(self.rng.integers(var.cardinality - 1))
                child[i] = (int(base[i]) + shift) % var.cardinality
            else:
                child[i] = float(self.rng.standard_normal())
        return tuple(child)

    def _crossover(self, a: tuple, b: tuple) -> tuple:
        mask = self.rng.random(self.num_variables) < 0.5
        return tuple(x if take else y for x, y, take in zip(a, b, mask))

    # -- optimizer protocol ---------------------------------------------------

    def set_incumbent(self, assignment: tuple, value: float) -> None:
        """Override the parent; used by wrappers that re-rank the archive."""
        self.parent = tuple(assignment)
        self.parent_value = float(value)

    def _ask(self) -> Candidate:
        if self.parent is None:
            assignment = self._random_assignment()
        else:
            base = self.parent
            if self.recombine_with_best and len(self.archive) > 0:
                _, _, best_decoded = self.archive.best_observation()
                if best_decoded is not None:
                    base = self._crossover(base, best_decoded)
            assignment = self._mutate(base)
        return self._candidate(onehot_encode(self.domain, assignment), assignment)

    def _tell(self, candidate, value, asked):
        if candidate.decoded is None:
            return  # cannot interpret raw encoded tells from outside
        if self.parent is None or (value <= self.parent_value if asked
                                   else value < self.parent_value):
            self.parent = candidate.decoded
            self.parent_value = value


def make_fastga(domain: Domain, seed=None, *, budget=None) -> DiscreteOnePlusOne:
    """(1+1) EA with power-law mutation strengths (heavy-tailed)."""
    return DiscreteOnePlusOne(domain, budget=budget, seed=seed, mutation="fastga")


def make_discrete_uniform_mix(domain: Domain, seed=None, *, budget=None,
                              recombine_with_best=False) -> DiscreteOnePlusOne:
    """(1+1) EA drawing its mutation rate uniformly from {1/n, ..., 1/2}."""
    return DiscreteOnePlusOne(domain, budget=budget, seed=seed, mutation="uniform_mix",
                              recombine_with_best=recombine_with_best)
