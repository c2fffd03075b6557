"""Descriptor-driven black-box optimization with a benchmark harness.

The top level exposes the ask/tell/recommend protocol, the problem
descriptor vocabulary, and the selection wizard that maps a descriptor to a
configured optimizer. Base optimizers live in `shiwa.optimizers`,
combinators (chaining, competition, optimistic bandit wrapping) in
`shiwa.combinators`, and the experiment harness in `shiwa.benchmark`.
"""

from .combinators import (Chain, ChainSpec, Compete, CompeteSpec,
                          OptimisticWrapper, big_budget_leaf, chain, compete,
                          optimistic_wrap, progressive_widening, ucb1_width)
from .core import (Archive, BudgetExhausted, Candidate, Categorical, Continuous,
                   DimensionMismatch, Domain, DomainMismatch, InvalidDescriptor,
                   NonFiniteValue, NothingObserved, Optimizer,
                   ParallelismExceeded, ProblemDescriptor, ShiwaError,
                   child_seed, subseed_rng)
from .selector import LEAVES, RoutingDecision, build_for, select
from .transforms import (block_slices, encode_dimension, sample_decode,
                         softmax_probabilities)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Archive", "BudgetExhausted", "Candidate", "Categorical", "Continuous",
    "DimensionMismatch", "Domain", "DomainMismatch", "InvalidDescriptor",
    "NonFiniteValue", "NothingObserved", "Optimizer", "ParallelismExceeded",
    "ProblemDescriptor", "ShiwaError", "child_seed", "subseed_rng",
    "Chain", "ChainSpec", "Compete", "CompeteSpec", "OptimisticWrapper",
    "big_budget_leaf", "chain", "compete", "optimistic_wrap",
    "progressive_widening", "ucb1_width",
    "LEAVES", "RoutingDecision", "build_for", "select",
    "block_slices", "encode_dimension", "sample_decode", "softmax_probabilities",
]
