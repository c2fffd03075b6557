"""Evolution strategies: the (1+1)-ES and population-control (TBPSA) family.

All of these work in the standardized continuous domain: the initial center
is the origin and the sampling reference is the standard normal, matching
the benchmark convention of drawing optima from N(0, Id).
"""

from __future__ import annotations

import numpy as np

from ..core import Candidate, Domain, DomainMismatch, Optimizer

__all__ = ["OnePlusOneES", "TBPSA", "make_one_plus_one_es", "make_tbpsa", "make_tbpsa_recombination"]


def _require_continuous(domain: Domain, name: str) -> None:
    if not domain.is_metrizable():
        raise DomainMismatch(f"{name} requires a fully continuous domain")


class OnePlusOneES(Optimizer):
    """(1+1)-ES with the 1/5 success rule.

    One parent, isotropic Gaussian mutation with step size sigma.  Success
    means strict improvement; sigma is multiplied by 2 on success and by
    2^(-1/4) on failure, so that a success frequency of exactly 1/5 leaves
    log(sigma) unchanged (2 * (2^(-1/4))^4 = 1).

    The first ask is the start point itself, so the parent value is observed
    rather than assumed.
    """

    SUCCESS_FACTOR = 2.0
    FAILURE_FACTOR = 2.0 ** (-1 / 4)

    def __init__(self, domain, *, budget=None, seed=None, initial_point=None):
        _require_continuous(domain, type(self).__name__)
        super().__init__(domain, budget=budget, seed=seed)
        self.sigma = 1.0
        if initial_point is None:
            self.parent = np.zeros(self.dimension)
        else:
            self.parent = np.asarray(initial_point, dtype=float).copy()
        self.parent_value: float | None = None
        self._evaluated_parent = False

    def _ask(self) -> Candidate:
        if not self._evaluated_parent:
            self._evaluated_parent = True
            return self._candidate(self.parent.copy())
        step = self.sigma * self.rng.standard_normal(self.dimension)
        return self._candidate(self.parent + step)

    def _tell(self, candidate, value, asked):
        if not asked:
            # warm-start data: adopt strictly better points, no sigma update
            if self.parent_value is None or value < self.parent_value:
                self.parent = candidate.point.copy()
                self.parent_value = value
                self._evaluated_parent = True
            return
        if self.parent_value is None:
            self.parent_value = value
            return
        if value < self.parent_value:
            self.parent = candidate.point.copy()
            self.parent_value = value
            self.sigma *= self.SUCCESS_FACTOR
        else:
            self.sigma *= self.FAILURE_FACTOR


class TBPSA(Optimizer):
    """(mu/mu, lambda)-ES with test-based population size adaptation.

    Offspring are sampled around the current center with a per-offspring
    log-normal step-size perturbation.  Every 5*lambda tells, the mean of
    the first lambda losses in the window is compared with the mean of the
    last lambda: if the improvement is below 1e-12 the population doubles
    (stagnation, typically noise), otherwise it shrinks by the factor 0.84
    but never below its initial size.  The center is the average of the mu
    best offspring of the generation and sigma the geometric mean of their
    step sizes.

    Recommendation is mean-based: the archive point with the lowest average
    observed value, which under noise favors reliably good points over lucky
    single draws.  `recombining=True` yields the parallel variant whose
    offspring are averaged with the best point observed so far.
    """

    STAGNATION_THRESHOLD = 1e-12
    SHRINK_FACTOR = 0.84

    def __init__(self, domain, *, budget=None, seed=None, noisy=True,
                 recombining=False, initial_point=None):
        _require_continuous(domain, type(self).__name__)
        super().__init__(domain, budget=budget, seed=seed)
        self.noisy = noisy
        self.recombining = recombining
        self.sigma = 1.0
        self.mu_init = self.dimension
        self.mu = self.mu_init
        self.llambda = 4 * self.mu
        if initial_point is None:
            self.center = np.zeros(self.dimension)
        else:
            self.center = np.asarray(initial_point, dtype=float).copy()
        self._loss_record: list[float] = []
        self._children: list[tuple[float, int, np.ndarray, float]] = []
        self._tiebreak = 0

    def _ask(self) -> Candidate:
        sigma_i = self.sigma * np.exp(self.rng.standard_normal() / np.sqrt(self.dimension))
        point = self.center + sigma_i * self.rng.standard_normal(self.dimension)
        if self.recombining and len(self.archive) > 0:
            best, _, _ = self.archive.best_observation()
            point = 0.5 * (point + best)
        cand = self._candidate(point)
        cand.meta["sigma"] = sigma_i
        return cand

    def _tell(self, candidate, value, asked):
        sigma_i = candidate.meta.get("sigma")
        if sigma_i is None:
            # unasked point: back out a plausible step size from its distance
            dist = float(np.linalg.norm(candidate.point - self.center))
            sigma_i = max(dist / np.sqrt(self.dimension), 1e-9)
        self._record_loss(value)
        self._tiebreak += 1
        self._children.append((value, self._tiebreak, candidate.point, sigma_i))
        if len(self._children) >= self.llambda:
            self._children.sort(key=lambda c: (c[0], c[1]))
            elite = self._children[: self.mu]
            self.center = np.mean([c[2] for c in elite], axis=0)
            self.sigma = float(np.exp(np.mean(np.log([c[3] for c in elite]))))
            self._children = []

    def _record_loss(self, value: float) -> None:
        self._loss_record.append(value)
        if len(self._loss_record) >= 5 * self.llambda:
            early = self._loss_record[: self.llambda]
            late = self._loss_record[-self.llambda:]
            improvement = np.mean(early) - np.mean(late)
            if improvement < self.STAGNATION_THRESHOLD:
                self.mu *= 2
            else:
                self.mu = max(self.mu_init, int(self.mu * self.SHRINK_FACTOR))
            self.llambda = 4 * self.mu
            self._loss_record = []

    def _recommend(self) -> Candidate:
        point, _, decoded = self.archive.best_mean()
        return Candidate(point, decoded)


def make_one_plus_one_es(d: int, seed=None, *, budget=None, initial_point=None) -> OnePlusOneES:
    """(1+1)-ES with 1/5 rule on a continuous domain of dimension d."""
    return OnePlusOneES(Domain.continuous(d), budget=budget, seed=seed, initial_point=initial_point)


def make_tbpsa(d: int, seed=None, noisy: bool = True, *, budget=None, initial_point=None) -> TBPSA:
    """Population-control ES; noisy=False is the naive variant (same
    mechanics, intended for stagnation handling without noise)."""
    return TBPSA(Domain.continuous(d), budget=budget, seed=seed, noisy=noisy,
                 initial_point=initial_point)


def make_tbpsa_recombination(d: int, seed=None, *, budget=None, initial_point=None) -> TBPSA:
    """TBPSA whose offspring are midpoint-recombined with the best so far."""
    return TBPSA(Domain.continuous(d), budget=budget, seed=seed, noisy=True,
                 recombining=True, initial_point=initial_point)
