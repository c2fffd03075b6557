"""Composing optimizers: chains, competitions, and the big-budget recipe.

A chain hands the budget to its stages in order and warm-starts each stage
from the previous recommendation.  A competition explores several searchers
round-robin for a fraction of the budget, then commits to the current best.
big_budget_leaf() combines both: 3 CMA copies compete for 10% of the
budget, the winner runs to the halfway mark, Powell polishes the rest.
"""

import numpy as np

from shiwa import ChainSpec, CompeteSpec, big_budget_leaf, chain, compete
from shiwa.optimizers import CMA
from shiwa.optimizers.local_search import Powell

target = np.full(8, 0.7)


def loss(x):
    return float(np.sum((x - target) ** 2))


def run(opt, budget):
    while opt.num_ask < budget:
        cand = opt.ask()
        opt.tell(cand, loss(cand.point))
    return loss(opt.recommend().point)


# stage factories all share one signature so specs can mix and match them
def cma_stage(domain, *, budget=None, seed=None, initial_point=None):
    return CMA(domain, budget=budget, seed=seed, initial_point=initial_point)


def powell_stage(domain, *, budget=None, seed=None, initial_point=None):
    return Powell(domain, budget=budget, seed=seed, start_point=initial_point)


# -- chain: CMA for the first 60%, Powell for the rest -----------------------

spec = ChainSpec((cma_stage, powell_stage), (0.6, 0.4))
chained = chain(spec, 4000, seed=1, dimension=8)
print("chain stage budgets:", chained.stage_budgets)
print("chain final loss:", run(chained, 4000))

# -- compete: three differently seeded CMAs, keep the best -------------------

spec = CompeteSpec((cma_stage, cma_stage, cma_stage), selection_fraction=0.25)
racing = compete(spec, 4000, seed=1, dimension=8)
print("compete final loss:", run(racing, 4000))
print("competitor ask counts:", [c.num_ask for c in racing.competitors],
      "winner:", racing.winner)

# -- the preassembled big-budget leaf ----------------------------------------

leaf = big_budget_leaf(8, 20000, seed=1)
print("big-budget final loss:", run(leaf, 20000))
