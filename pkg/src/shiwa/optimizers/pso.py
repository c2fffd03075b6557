"""Global-best particle swarm optimization."""

from __future__ import annotations

import numpy as np

from ..core import Candidate, Domain, DomainMismatch, Optimizer

__all__ = ["PSO", "make_pso"]


class PSO(Optimizer):
    """PSO with inertia 0.72 and cognitive/social coefficients 1.49.

    Particles start from standard normal positions with zero velocity; each
    ask advances one particle (round-robin) and returns its new position, so
    batched asks up to the swarm size are natural.
    """

    def __init__(self, domain, *, budget=None, seed=None, num_particles=40,
                 inertia=0.72, cognitive=1.49, social=1.49):
        if not domain.is_metrizable():
            raise DomainMismatch("PSO requires a continuous domain")
        super().__init__(domain, budget=budget, seed=seed)
        self.num_particles = num_particles
        self.inertia = inertia
        self.cognitive = cognitive
        self.social = social
        d = self.dimension
        self.positions = self.rng.standard_normal((num_particles, d))
        self.velocities = np.zeros((num_particles, d))
        self.best_positions = self.positions.copy()
        self.best_values = np.full(num_particles, np.inf)
        self.global_best: np.ndarray | None = None
        self.global_best_value = np.inf
        self._cursor = 0
        self._seen = np.zeros(num_particles, dtype=bool)

    def _ask(self) -> Candidate:
        i = self._cursor
        self._cursor = (self._cursor + 1) % self.num_particles
        if self._seen[i] and self.global_best is not None:
            r1 = self.rng.random(self.dimension)
            r2 = self.rng.random(self.dimension)
            self.velocities[i] = (
                self.inertia * self.velocities[i]
                + self.cognitive * r1 * (self.best_positions[i] - self.positions[i])
                + self.social * r2 * (self.global_best - self.positions[i])
            )
            self.positions[i] = self.positions[i] + self.velocities[i]
        self._seen[i] = True
        cand = self._candidate(self.positions[i].copy())
        cand.meta["particle"] = i
        return cand

    def _tell(self, candidate, value, asked):
        if not asked:
            return
        i = candidate.meta.get("particle", 0)
        if value < self.best_values[i]:
            self.best_values[i] = value
            self.best_positions[i] = candidate.point.copy()
        if value < self.global_best_value:
            self.global_best_value = value
            self.global_best = candidate.point.copy()


def make_pso(d: int, seed=None, *, budget=None) -> PSO:
    """Global-best PSO with 40 particles."""
    return PSO(Domain.continuous(d), budget=budget, seed=seed)
