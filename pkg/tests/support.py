"""Shared ask/tell driving loops for the behavioral tests."""

from __future__ import annotations

import numpy as np

from shiwa import Candidate, Optimizer, subseed_rng


class CountingStub(Optimizer):
    """Deterministic no-search optimizer; emits distinct points and counts asks.

    The first coordinate carries `tag` so tests can tell stubs apart, the
    last carries the ask counter so every candidate key is unique.
    """

    def __init__(self, domain, tag=0.0, *, budget=None, seed=None):
        super().__init__(domain, budget=budget, seed=seed)
        self.tag = float(tag)

    def _ask(self):
        point = np.zeros(self.dimension)
        point[0] = self.tag
        point[-1] = float(self.num_ask)
        return Candidate(point)


def stub_factory(tag):
    """A combinator-stage factory that builds a CountingStub."""

    def factory(domain, *, budget=None, seed=None, initial_point=None):
        return CountingStub(domain, tag, budget=budget, seed=seed)

    return factory


def drive(optimizer, fn, budget, batch=1):
    """Run the ask/tell loop to the budget; return the recommendation's loss."""
    while optimizer.num_ask < budget:
        batch_now = [optimizer.ask()
                     for _ in range(min(batch, budget - optimizer.num_ask))]
        for cand in batch_now:
            optimizer.tell(cand, fn(cand.point))
    return fn(optimizer.recommend().point)


def drive_discrete(optimizer, loss, budget, noise_rng=None, sigma=0.0):
    """Drive a categorical-domain optimizer; loss takes the decoded assignment."""
    while optimizer.num_ask < budget:
        cand = optimizer.ask()
        value = loss(cand.decoded)
        if noise_rng is not None:
            value += sigma * noise_rng.standard_normal()
        optimizer.tell(cand, value)
    return loss(optimizer.recommend().decoded)


def translated_sphere(seed, d, stream):
    """Sphere with its optimum at a seeded standard-normal point.

    `stream` keeps the translations of unrelated tests on disjoint rng
    streams; it must stay nonzero so the translation cannot alias an
    optimizer seeded with the same integer.
    """
    t = subseed_rng(seed, stream).standard_normal(d)
    return lambda x: float(np.sum((x - t) ** 2))


def onemax(labels):
    """Number of ones; minimized at the all-zeros assignment."""
    return float(np.sum(np.asarray(labels)))
