"""Higher-order optimizers: chaining, competing portfolios, and the
optimistic noisy wrapper with progressive widening.

Stage and competitor factories share one calling convention:

    factory(domain, *, budget, seed, initial_point) -> Optimizer

`budget` may be None (unbounded), `initial_point` is the warm-start point
or None.  Child seeds are derived with `child_seed`, whose index-0 identity
makes a chain of one stage bit-identical to the bare stage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Candidate, Domain, DomainMismatch, Optimizer, child_seed
from .local_search import Powell
from .optimizers.cma import CMA
from .optimizers.discrete import make_discrete_uniform_mix

__all__ = [
    "ChainSpec", "Chain", "chain",
    "CompeteSpec", "Compete", "compete",
    "big_budget_leaf",
    "integer_cbrt", "progressive_widening", "ucb1_width",
    "OptimisticWrapper", "optimistic_wrap", "optimistic_discrete_leaf",
]

StageFactory = Callable[..., Optimizer]


# ---------------------------------------------------------------------------
# Chaining


@dataclass(frozen=True)
class ChainSpec:
    """Ordered (factory, budget fraction) stages; fractions sum to 1."""

    stages: tuple[tuple[StageFactory, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "stages", tuple((f, float(frac)) for f, frac in self.stages))
        if not self.stages:
            raise ValueError("a chain needs at least one stage")
        fractions = [frac for _, frac in self.stages]
        if any(not 0 < frac <= 1 for frac in fractions):
            raise ValueError(f"stage fractions must lie in (0, 1], got {fractions}")
        if abs(sum(fractions) - 1.0) > 1e-12:
            raise ValueError(f"stage fractions must sum to 1, got {sum(fractions)}")

    def stage_budgets(self, total_budget: int) -> list[int]:
        """floor(fraction * total) per stage, remainder to the last stage."""
        sizes = [math.floor(frac * total_budget) for _, frac in self.stages[:-1]]
        sizes.append(total_budget - sum(sizes))
        return sizes


class Chain(Optimizer):
    """Runs each stage for its budget share, warm-starting the next stage
    from the previous one's recommendation and archive.

    Stages are constructed lazily at their first ask, so a later stage sees
    the freshest possible recommendation.  The previous archive is replayed
    into the new stage as unasked tells, then the stage answers all asks in
    its budget window.
    """

    def __init__(self, spec: ChainSpec, domain: Domain, total_budget: int, seed=None):
        super().__init__(domain, budget=total_budget, seed=seed)
        self.spec = spec
        self.stage_budgets = spec.stage_budgets(total_budget)
        if any(b < 0 for b in self.stage_budgets):
            raise ValueError(f"stage budgets {self.stage_budgets} exceed the total")
        self._boundaries = np.cumsum(self.stage_budgets)
        self._stages: list[Optimizer | None] = [None] * len(self.stage_budgets)
        self._route: dict[bytes, list[int]] = {}
        self._active = 0

    def _ensure_stage(self, index: int) -> Optimizer:
        stage = self._stages[index]
        if stage is not None:
            return stage
        factory, _ = self.spec.stages[index]
        start = None
        previous = next(
            (self._stages[p] for p in range(index - 1, -1, -1) if self._stages[p] is not None),
            None,
        )
        if previous is not None and previous.num_tell > 0:
            start = previous.recommend().point
        stage = factory(
            self.domain,
            budget=self.stage_budgets[index],
            seed=child_seed(self.seed, index),
            initial_point=start,
        )
        if previous is not None:
            for entry in previous.archive:
                for value in entry.values:
                    stage.tell(Candidate(entry.point, entry.decoded), value)
        self._stages[index] = stage
        self._active = index
        return stage

    def _stage_index_for(self, ask_index: int) -> int:
        return int(np.searchsorted(self._boundaries, ask_index, side="right"))

    def _ask(self) -> Candidate:
        # searchsorted lands past zero-width budget windows by itself
        index = self._stage_index_for(self.num_ask)
        stage = self._ensure_stage(index)
        candidate = stage.ask()
        self._route.setdefault(candidate.key(), []).append(index)
        return candidate

    def _tell(self, candidate, value, asked):
        routes = self._route.get(candidate.key())
        if routes:
            index = routes.pop(0)
            if not routes:
                del self._route[candidate.key()]
        else:
            index = self._active  # unasked warm-start data goes to the live stage
        stage = self._ensure_stage(index)
        stage.tell(candidate, value)


def chain(spec: ChainSpec, total_budget: int, seed=None, *,
          domain: Domain | None = None, dimension: int | None = None) -> Chain:
    """Budgeted chain over a continuous domain (or an explicit `domain`)."""
    if domain is None:
        if dimension is None:
            raise ValueError("chain() needs either domain= or dimension=")
        domain = Domain.continuous(dimension)
    return Chain(spec, domain, total_budget, seed)


# ---------------------------------------------------------------------------
# Competing portfolios (active selection)


@dataclass(frozen=True)
class CompeteSpec:
    """k competitor factories plus the exploration fraction of the budget."""

    factories: tuple[StageFactory, ...]
    selection_fraction: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "factories", tuple(self.factories))
        if len(self.factories) < 2:
            raise ValueError("a competition needs at least 2 competitors")
        if not 0 < self.selection_fraction < 1:
            raise ValueError(f"selection fraction must be in (0, 1), got {self.selection_fraction}")


class Compete(Optimizer):
    """Round-robin exploration, then winner takes the rest of the budget.

    The first floor(phi * T) asks rotate over the competitors in index
    order; at the switch point the competitor with the lowest observed value
    so far continues alone (ties resolve to the lowest index).  Tells of
    points this optimizer never asked are archived but not forwarded.
    """

    def __init__(self, spec: CompeteSpec, domain: Domain, total_budget: int,
                 parallelism: int = 1, seed=None):
        super().__init__(domain, budget=total_budget, seed=seed)
        self.spec = spec
        self.parallelism = parallelism
        self.num_explore = math.floor(spec.selection_fraction * total_budget)
        if self.num_explore < len(spec.factories):
            raise ValueError(
                f"exploration budget {self.num_explore} cannot cover "
                f"{len(spec.factories)} competitors"
            )
        self.competitors = [
            factory(domain, budget=None, seed=child_seed(self.seed, i), initial_point=None)
            for i, factory in enumerate(spec.factories)
        ]
        self.winner: int | None = None
        self._route: dict[bytes, list[int]] = {}

    def _select_winner(self) -> int:
        scores = []
        for i, competitor in enumerate(self.competitors):
            if len(competitor.archive) == 0:
                scores.append(np.inf)
            else:
                scores.append(competitor.archive.best_observation()[1])
        return int(np.argmin(scores))  # argmin takes the first on ties

    def _ask(self) -> Candidate:
        if self.num_ask < self.num_explore:
            index = self.num_ask % len(self.competitors)
        else:
            if self.winner is None:
                self.winner = self._select_winner()
            index = self.winner
        candidate = self.competitors[index].ask()
        self._route.setdefault(candidate.key(), []).append(index)
        return candidate

    def _tell(self, candidate, value, asked):
        routes = self._route.get(candidate.key())
        if not routes:
            return
        index = routes.pop(0)
        if not routes:
            del self._route[candidate.key()]
        self.competitors[index].tell(candidate, value)


def compete(spec: CompeteSpec, total_budget: int, parallelism: int = 1, seed=None, *,
            domain: Domain | None = None, dimension: int | None = None) -> Compete:
    """Budgeted competition over a continuous domain (or an explicit `domain`)."""
    if domain is None:
        if dimension is None:
            raise ValueError("compete() needs either domain= or dimension=")
        domain = Domain.continuous(dimension)
    return Compete(spec, domain, total_budget, parallelism, seed)


# ---------------------------------------------------------------------------
# The big-budget leaf


def _cma_stage(domain, *, budget=None, seed=None, initial_point=None) -> CMA:
    return CMA(domain, budget=budget, seed=seed, initial_point=initial_point)


def big_budget_leaf(d: int, T: int, seed=None) -> Chain:
    """Active selection over 3 CMA copies for 10% of the budget, the best
    of them up to half the budget, then Powell for the rest.

    Composed as a two-stage chain whose first stage is a competition with
    exploration fraction 0.2: floor(0.2 * floor(T/2)) == floor(T/10), so the
    three CMAs share exactly the first tenth of the total budget.
    """

    def compete_stage(domain, *, budget, seed=None, initial_point=None):
        spec = CompeteSpec((_cma_stage, _cma_stage, _cma_stage), selection_fraction=0.2)
        return Compete(spec, domain, total_budget=budget, seed=seed)

    def powell_stage(domain, *, budget, seed=None, initial_point=None):
        return Powell(domain, budget=budget, seed=seed, start_point=initial_point)

    spec = ChainSpec(((compete_stage, 0.5), (powell_stage, 0.5)))
    return Chain(spec, Domain.continuous(d), total_budget=T, seed=seed)


# ---------------------------------------------------------------------------
# Optimism under noise, with progressive widening


def integer_cbrt(n: int) -> int:
    """Largest k with k^3 <= n, exact for any non-negative integer."""
    if n < 0:
        raise ValueError("integer_cbrt needs a non-negative integer")
    k = round(n ** (1.0 / 3.0))
    while k > 0 and k * k * k > n:
        k -= 1
    while (k + 1) ** 3 <= n:
        k += 1
    return k


def progressive_widening(n: int) -> bool:
    """True when floor(n^(1/3)) crosses an integer, i.e. n is a perfect cube."""
    return integer_cbrt(n) > integer_cbrt(n - 1)


def ucb1_width(total_tells: int, count: int) -> float:
    """Classical UCB1 confidence width sqrt(2 ln(total) / count)."""
    return math.sqrt(2 * math.log(max(total_tells, 1)) / count)


class OptimisticWrapper(Optimizer):
    """Progressive-widening optimistic counterpart of an inner optimizer.

    Asks whose 1-based index is not a widening point return the archived
    point with the lowest optimistic value (mean minus confidence width),
    forcing re-evaluation of promising candidates; widening asks delegate to
    the inner optimizer.  The inner optimizer is driven with pessimistic
    values (mean plus width), so its elitist decisions reproduce what it
    would do on a confidence-adjusted archive; inner optimizers exposing
    `set_incumbent` are additionally re-synced to the pessimistic argmin
    before each delegated ask.  The recommendation is the pessimistic
    argmin, which degenerates to the plain archive argmin when the width is
    zero.
    """

    def __init__(self, inner: Optimizer, *, budget=None, seed=None, width_fn=ucb1_width):
        super().__init__(inner.domain, budget=budget, seed=seed)
        self.inner = inner
        self.width_fn = width_fn

    # -- confidence views ------------------------------------------------------

    def _width(self, count: int) -> float:
        return self.width_fn(self.archive.num_observations, count)

    def _optimistic_entry(self):
        return min(self.archive, key=lambda e: (e.mean - self._width(e.count), e.order))

    def _pessimistic_entry(self):
        return min(self.archive, key=lambda e: (e.mean + self._width(e.count), e.order))

    # -- protocol ---------------------------------------------------------------

    def _ask(self) -> Candidate:
        if progressive_widening(self.num_ask + 1) or len(self.archive) == 0:
            if len(self.archive) > 0 and hasattr(self.inner, "set_incumbent"):
                entry = self._pessimistic_entry()
                if entry.decoded is not None:
                    self.inner.set_incumbent(
                        entry.decoded, entry.mean + self._width(entry.count)
                    )
            return self.inner.ask()
        entry = self._optimistic_entry()
        return Candidate(entry.point, entry.decoded)

    def _tell(self, candidate, value, asked):
        pessimistic = (self.archive.mean(candidate.point)
                       + self._width(self.archive.count(candidate.point)))
        self.inner.tell(candidate, pessimistic)

    def _recommend(self) -> Candidate:
        entry = self._pessimistic_entry()
        return Candidate(entry.point, entry.decoded)


def optimistic_wrap(inner_factory: Callable[[int], Optimizer], seed=None, *,
                    budget=None, width_fn=ucb1_width) -> OptimisticWrapper:
    """Wrap `inner_factory(seed) -> Optimizer` in the optimistic scheme.

    The inner optimizer is the wrapper's only child, so it receives the seed
    unchanged (child index 0 is the identity split).
    """
    inner = inner_factory(seed)
    return OptimisticWrapper(inner, budget=budget, seed=inner.seed, width_fn=width_fn)


def optimistic_discrete_leaf(domain: Domain, T: int, seed=None) -> OptimisticWrapper:
    """Noisy non-metrizable leaf: optimistic wrapper around the uniform
    mutation-rate (1+1) EA with best-so-far recombination."""
    if domain.is_metrizable():
        raise DomainMismatch("the optimistic discrete leaf needs categorical variables")

    def factory(inner_seed):
        return make_discrete_uniform_mix(domain, inner_seed, recombine_with_best=True)

    return optimistic_wrap(factory, seed, budget=T)
