"""The algorithm-selection wizard: a fixed decision tree from problem
descriptors to configured optimizers.

The tests run strictly top-down; the first satisfied test routes.  All
thresholds are taken literally: d >= 60 inclusive, budget > 30000 strict,
parallelism > budget/2 strict, budget < 30d strict, d > 30 strict,
d <= 2000 inclusive.  "Continuous" means the domain has no categorical
variable; "sequential" means parallelism == 1.  Selection itself performs
zero objective evaluations: the decision is made before the run starts, and
`RoutingDecision.build` constructs the optimizer on demand with the full
budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .core import Optimizer, ProblemDescriptor
from .combinators import ChainSpec, Chain, big_budget_leaf, optimistic_discrete_leaf
from .local_search import make_cobyla_like, make_powell
from .optimizers.cma import CMA, make_cma, make_cma_softmax
from .optimizers.de import make_de
from .optimizers.evolution import (
    make_one_plus_one_es,
    make_tbpsa,
    make_tbpsa_recombination,
)
from .optimizers.discrete import make_fastga
from .optimizers.oneshot import make_metarecentering

__all__ = ["RoutingDecision", "select", "LEAVES", "build_for"]

# leaf identifier -> human-readable leaf description
LEAVES = {
    "optimistic-discrete": "Optimistic ES: ES + uniform mutation rates + bandit algorithm + recombination",
    "cma-softmax": "CMA with softmax for discrete",
    "tbpsa": "Pop. control",
    "fastga": "FastGA",
    "big-budget": ("3 copies of CMA during 10% of the budget (active selection), "
                   "then pick up the best; last half with Powell"),
    "metarecentering": "MetaRecentering",
    "tbpsa-recombination": "Pop. control + recom. = best so far",
    "memetic-chain": "chaining CMA + Powell (memetic)",
    "one-plus-one-es": "(1+1)-ES with 1/5 rule",
    "cobyla": "Cobyla",
    "cma": "CMA",
    "de": "DE",
}


@dataclass(frozen=True)
class RoutingDecision:
    """Outcome of the wizard for one descriptor.

    `trace` is the ordered list of (test, outcome) pairs that were
    evaluated; `configuration` describes the chosen leaf's constructor
    parameters.  `build(seed)` instantiates the optimizer.
    """

    leaf: str
    label: str
    trace: tuple[tuple[str, bool], ...]
    configuration: dict
    descriptor: ProblemDescriptor
    _builder: Callable = field(repr=False)

    def build(self, seed=None) -> Optimizer:
        return self._builder(self.descriptor, seed)

    def explanation(self) -> str:
        lines = [f"{test} -> {'yes' if outcome else 'no'}" for test, outcome in self.trace]
        lines.append(f"leaf: {self.label}")
        return "\n".join(lines)


def _memetic_chain(descriptor: ProblemDescriptor, seed) -> Chain:
    def cma_stage(domain, *, budget=None, seed=None, initial_point=None):
        return CMA(domain, budget=budget, seed=seed, initial_point=initial_point)

    def powell_stage(domain, *, budget=None, seed=None, initial_point=None):
        return make_powell(domain.encoded_dimension, seed, start_point=initial_point,
                           budget=budget)

    spec = ChainSpec(((cma_stage, 0.5), (powell_stage, 0.5)))
    return Chain(spec, descriptor.domain, total_budget=descriptor.budget, seed=seed)


_BUILDERS: dict[str, Callable] = {
    "optimistic-discrete": lambda d, seed: optimistic_discrete_leaf(d.domain, d.budget, seed),
    "cma-softmax": lambda d, seed: make_cma_softmax(d.domain, seed, budget=d.budget),
    "tbpsa": lambda d, seed: make_tbpsa(d.dimension, seed, noisy=True, budget=d.budget),
    "fastga": lambda d, seed: make_fastga(d.domain, seed, budget=d.budget),
    "big-budget": lambda d, seed: big_budget_leaf(d.dimension, d.budget, seed),
    "metarecentering": lambda d, seed: make_metarecentering(
        d.dimension, d.budget, d.parallelism, seed),
    "tbpsa-recombination": lambda d, seed: make_tbpsa_recombination(
        d.dimension, seed, budget=d.budget),
    "memetic-chain": _memetic_chain,
    "one-plus-one-es": lambda d, seed: make_one_plus_one_es(d.dimension, seed, budget=d.budget),
    "cobyla": lambda d, seed: make_cobyla_like(d.dimension, seed, budget=d.budget),
    "cma": lambda d, seed: make_cma(d.dimension, seed, budget=d.budget),
    "de": lambda d, seed: make_de(d.dimension, seed, budget=d.budget),
}


def build_for(leaf: str, descriptor: ProblemDescriptor, seed=None) -> Optimizer:
    """Construct the named leaf's optimizer for a descriptor."""
    return _BUILDERS[leaf](descriptor, seed)


def select(descriptor: ProblemDescriptor) -> RoutingDecision:
    """Route a descriptor through the decision tree to exactly one leaf."""
    d = descriptor.dimension
    budget = descriptor.budget
    parallelism = descriptor.parallelism
    noisy = descriptor.noisy
    continuous = descriptor.is_continuous()
    sequential = descriptor.is_sequential()
    metrizable = descriptor.domain.is_metrizable()

    trace: list[tuple[str, bool]] = []

    def test(label: str, outcome: bool) -> bool:
        trace.append((label, outcome))
        return outcome

    def decide(leaf: str, **config) -> RoutingDecision:
        configuration = {"dimension": d, "budget": budget, "parallelism": parallelism,
                         **config}
        return RoutingDecision(leaf, LEAVES[leaf], tuple(trace), configuration,
                               descriptor, _BUILDERS[leaf])

    if test("Noisy and non-metrizable?", noisy and not metrizable):
        return decide("optimistic-discrete")
    if test("Non-metrizable and d >= 60", not metrizable and d >= 60):
        return decide("cma-softmax")
    if test("Noisy and continuous?", noisy and continuous):
        return decide("tbpsa", noisy=True)
    if test("Non-metrizable?", not metrizable):
        return decide("fastga")
    if test("Continuous and budget > 30000?", continuous and budget > 30000):
        return decide("big-budget")
    if test("Parallelism > budget/2?", 2 * parallelism > budget):
        return decide("metarecentering")
    if test("Parallelism > budget/5?", 5 * parallelism > budget):
        return decide("tbpsa-recombination")
    if test("Sequential and budget > 6000 and d > 7?",
            sequential and budget > 6000 and d > 7):
        return decide("memetic-chain", stages=("cma", "powell"), fractions=(0.5, 0.5))
    if test("Sequential and budget < 30d?", sequential and budget < 30 * d):
        if test("d > 30?", d > 30):
            return decide("one-plus-one-es")
        return decide("cobyla")
    if test("d <= 2000?", d <= 2000):
        return decide("cma")
    return decide("de")
