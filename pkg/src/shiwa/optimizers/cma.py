"""Covariance matrix adaptation ES, plus its softmax wrapper for discrete domains.

This is the standard CMA-ES: weighted recombination of the best mu of
lambda offspring, rank-one and rank-mu covariance updates, and cumulative
step-size adaptation.  Ask and tell are decoupled: asks sample from the
current search distribution, and the distribution updates once lambda
evaluations have been told, so batched parallel asks need no special case.
"""

from __future__ import annotations

import numpy as np

from ..core import Candidate, Domain, DomainMismatch, Optimizer, subseed_rng
from ..transforms import sample_decode

__all__ = ["CMA", "SoftmaxCMA", "make_cma", "make_cma_softmax", "default_population_size"]


def default_population_size(d: int) -> int:
    return 4 + int(np.floor(3 * np.log(d)))


class CMA(Optimizer):
    """CMA-ES with lazy eigendecomposition.

    The covariance eigensystem is refreshed every ceil(1/(10*d*(c1+cmu)))
    generations; between refreshes, sampling and the inverse square root
    reuse the cached basis.  Eigenvalues are floored at 1e-12 times the
    largest one, which keeps the matrix positive definite through the
    occasional numerically indefinite update.
    """

    EIGEN_FLOOR = 1e-12

    def __init__(self, domain, *, budget=None, seed=None, population_size=None,
                 initial_point=None):
        if not domain.is_metrizable():
            raise DomainMismatch("CMA requires a continuous domain; use the softmax variant")
        super().__init__(domain, budget=budget, seed=seed)
        d = self.dimension
        self.population_size = population_size or default_population_size(d)
        lam = self.population_size
        self.mu = lam // 2
        weights = np.log((lam + 1) / 2) - np.log(np.arange(1, self.mu + 1))
        self.weights = weights / weights.sum()
        self.mu_eff = 1.0 / np.sum(self.weights**2)

        self.c_sigma = (self.mu_eff + 2) / (d + self.mu_eff + 5)
        self.d_sigma = 1 + 2 * max(0.0, np.sqrt((self.mu_eff - 1) / (d + 1)) - 1) + self.c_sigma
        self.c_c = (4 + self.mu_eff / d) / (d + 4 + 2 * self.mu_eff / d)
        self.c_1 = 2 / ((d + 1.3) ** 2 + self.mu_eff)
        self.c_mu = min(1 - self.c_1, 2 * (self.mu_eff - 2 + 1 / self.mu_eff) / ((d + 2) ** 2 + self.mu_eff))
        self.chi_n = np.sqrt(d) * (1 - 1 / (4 * d) + 1 / (21 * d * d))
        self.lazy_gap = int(np.ceil(1 / (10 * d * (self.c_1 + self.c_mu))))

        self.mean = (np.zeros(d) if initial_point is None
                     else np.asarray(initial_point, dtype=float).copy())
        self.sigma = 1.0
        self.cov = np.eye(d)
        self.path_sigma = np.zeros(d)
        self.path_c = np.zeros(d)
        self.generation = 0
        self._gens_since_eigen = 0
        self._basis = np.eye(d)
        self._scales = np.ones(d)  # sqrt of eigenvalues
        self._pending: list[tuple[float, int, np.ndarray]] = []
        self._tiebreak = 0

    # -- distribution maintenance -------------------------------------------

    def _refresh_eigensystem(self) -> None:
        self.cov = 0.5 * (self.cov + self.cov.T)
        eigvals, basis = np.linalg.eigh(self.cov)
        floor = self.EIGEN_FLOOR * max(eigvals[-1], self.EIGEN_FLOOR)
        eigvals = np.maximum(eigvals, floor)
        self._basis = basis
        self._scales = np.sqrt(eigvals)
        self.cov = (basis * eigvals) @ basis.T
        self._gens_since_eigen = 0

    def _inv_sqrt_apply(self, vec: np.ndarray) -> np.ndarray:
        return self._basis @ ((self._basis.T @ vec) / self._scales)

    # -- ask/tell ------------------------------------------------------------

    def _ask(self) -> Candidate:
        z = self.rng.standard_normal(self.dimension)
        point = self.mean + self.sigma * (self._basis @ (self._scales * z))
        return self._candidate(point)

    def _tell(self, candidate, value, asked):
        self._tiebreak += 1
        self._pending.append((value, self._tiebreak, candidate.point))
        if len(self._pending) >= self.population_size:
            self._update_generation()

    def _update_generation(self) -> None:
        self._pending.sort(key=lambda c: (c[0], c[1]))
        selected = self._pending[: self.mu]
        self._pending = []
        ys = np.array([(p - self.mean) / self.sigma for _, _, p in selected])
        y_w = self.weights @ ys
        new_mean = self.mean + self.sigma * y_w
        self.generation += 1

        self.path_sigma = (1 - self.c_sigma) * self.path_sigma + np.sqrt(
            self.c_sigma * (2 - self.c_sigma) * self.mu_eff
        ) * self._inv_sqrt_apply(y_w)
        norm_ps = float(np.linalg.norm(self.path_sigma))
        expected = self.chi_n * np.sqrt(1 - (1 - self.c_sigma) ** (2 * self.generation))
        h_sigma = 1.0 if norm_ps < (1.4 + 2 / (self.dimension + 1)) * expected else 0.0
        self.path_c = (1 - self.c_c) * self.path_c + h_sigma * np.sqrt(
            self.c_c * (2 - self.c_c) * self.mu_eff
        ) * y_w

        rank_mu = (ys.T * self.weights) @ ys
        self.cov = (
            (1 - self.c_1 - self.c_mu) * self.cov
            + self.c_1 * (np.outer(self.path_c, self.path_c)
                          + (1 - h_sigma) * self.c_c * (2 - self.c_c) * self.cov)
            + self.c_mu * rank_mu
        )
        self.cov = 0.5 * (self.cov + self.cov.T)

        self.sigma *= float(np.exp((self.c_sigma / self.d_sigma) * (norm_ps / self.chi_n - 1)))
        self.sigma = float(np.clip(self.sigma, 1e-20, 1e20))
        self.mean = new_mean

        self._gens_since_eigen += 1
        if self._gens_since_eigen >= self.lazy_gap:
            self._refresh_eigensystem()


class SoftmaxCMA(CMA):
    """CMA over the softmax-encoded space of a domain with categorical variables.

    Each asked point (a logit vector) is decoded into a concrete assignment
    with a sub-seeded generator keyed by (optimizer seed, ask index), so the
    stochastic decode is reproducible run to run.
    """

    def __init__(self, domain, *, budget=None, seed=None, population_size=None,
                 initial_point=None):
        if domain.is_metrizable():
            raise DomainMismatch("the softmax variant is for domains with categorical variables")
        self._mixed_domain = domain
        continuous_view = Domain.continuous(domain.encoded_dimension)
        super().__init__(continuous_view, budget=budget, seed=seed,
                         population_size=population_size, initial_point=initial_point)
        self.domain = domain

    def _ask(self) -> Candidate:
        cand = super()._ask()
        # num_ask + 1 keeps the last key nonzero; a trailing zero would make
        # the decode stream alias the optimizer's own sampling stream
        decode_rng = subseed_rng(self.seed, self.num_ask + 1)
        cand.decoded = sample_decode(cand.point, self._mixed_domain, decode_rng)
        return cand


def make_cma(d: int, seed=None, population_size: int | None = None, *,
             budget=None, initial_point=None) -> CMA:
    """Standard CMA-ES on a continuous domain of dimension d."""
    return CMA(Domain.continuous(d), budget=budget, seed=seed,
               population_size=population_size, initial_point=initial_point)


def make_cma_softmax(domain: Domain, seed=None, *, budget=None) -> SoftmaxCMA:
    """CMA over the softmax encoding of a categorical or mixed domain."""
    return SoftmaxCMA(domain, budget=budget, seed=seed)
