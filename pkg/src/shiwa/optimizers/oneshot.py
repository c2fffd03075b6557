"""One-shot optimizers: every candidate is decided before any feedback."""

from __future__ import annotations

import numpy as np
from scipy.special import ndtri

from ..core import Candidate, Domain, DomainMismatch, Optimizer

__all__ = ["MetaRecentering", "RandomSearch", "make_metarecentering", "make_random_search"]


def _first_primes(count: int) -> list[int]:
    primes: list[int] = []
    n = 2
    while len(primes) < count:
        if all(n % p for p in primes if p * p <= n):
            primes.append(n)
        n += 1
    return primes


def _scrambled_radical_inverse(i: int, base: int, perm: np.ndarray) -> float:
    # perm fixes 0, so the value stays in (0, 1) for every i >= 1
    inv = 0.0
    scale = 1.0 / base
    while i > 0:
        inv += perm[i % base] * scale
        scale /= base
        i //= base
    return inv


class MetaRecentering(Optimizer):
    """Scrambled Hammersley sampling with automatic rescaling.

    The T points are the Hammersley set over (0,1)^d — enumeration
    coordinate (2i-1)/(2T), then radical inverses in the first d-1 prime
    bases with seeded digit permutations (0 fixed) — pushed through the
    inverse normal CDF and scaled by sqrt(ln(T)/d), clamped to [0.01, 100].
    The scaling shrinks the cloud toward the center when the budget is small
    relative to the dimension, where the prior N(0, Id) mass is wasted.
    """

    def __init__(self, domain, *, budget, seed=None, parallelism=None):
        if not domain.is_metrizable():
            raise DomainMismatch("MetaRecentering requires a continuous domain")
        if budget is None or budget < 1:
            raise ValueError("MetaRecentering needs a finite positive budget")
        super().__init__(domain, budget=budget, seed=seed)
        self.parallelism = parallelism if parallelism is not None else budget
        d = self.dimension
        self.scale = float(np.clip(np.sqrt(np.log(budget) / d) if budget > 1 else 0.0,
                                   0.01, 100.0))
        self._bases = _first_primes(d - 1) if d > 1 else []
        self._perms = [
            np.concatenate(([0], 1 + self.rng.permutation(b - 1))) for b in self._bases
        ]

    def _ask(self) -> Candidate:
        i = self.num_ask + 1  # 1-based index into the Hammersley set
        u = np.empty(self.dimension)
        u[0] = (2 * i - 1) / (2 * self.budget)
        for j, (base, perm) in enumerate(zip(self._bases, self._perms), start=1):
            u[j] = _scrambled_radical_inverse(i, base, perm)
        return self._candidate(self.scale * ndtri(u))


class RandomSearch(Optimizer):
    """I.i.d. standard normal sampling; the classical one-shot baseline."""

    def __init__(self, domain, *, budget=None, seed=None):
        if not domain.is_metrizable():
            raise DomainMismatch("random search here samples a continuous domain")
        super().__init__(domain, budget=budget, seed=seed)

    def _ask(self) -> Candidate:
        return self._candidate(self.rng.standard_normal(self.dimension))


def make_metarecentering(d: int, budget: int, parallelism: int = None, seed=None) -> MetaRecentering:
    """Fully parallel one-shot optimizer (Hammersley + scrambling + rescaling)."""
    return MetaRecentering(Domain.continuous(d), budget=budget, seed=seed,
                           parallelism=parallelism)


def make_random_search(d: int, seed=None, *, budget=None) -> RandomSearch:
    return RandomSearch(Domain.continuous(d), budget=budget, seed=seed)
