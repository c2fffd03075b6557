"""The selection wizard: describe your problem, get a configured optimizer.

A ProblemDescriptor carries the four facts the wizard routes on: the domain
(continuous, categorical or mixed), the evaluation budget, how many asks
must be served between tells, and whether evaluations are noisy.  select()
walks a fixed decision list and returns the chosen leaf plus the trace of
answered tests, so the routing is fully auditable.
"""

import numpy as np

from shiwa import Domain, ProblemDescriptor, select

cases = {
    "small sequential continuous": ProblemDescriptor.for_continuous(10, 200),
    "noisy continuous": ProblemDescriptor.for_continuous(10, 1000, noisy=True),
    "highly parallel": ProblemDescriptor.for_continuous(25, 100, parallelism=60),
    "big budget": ProblemDescriptor.for_continuous(10, 40000),
    "binary strings": ProblemDescriptor.from_domain(
        Domain.categorical([2] * 20), 2000),
}

for title, descriptor in cases.items():
    decision = select(descriptor)
    print(f"--- {title}")
    print(decision.explanation())
    print()

# a decision is also a factory: build() instantiates the leaf with the
# descriptor's budget baked in
decision = select(ProblemDescriptor.for_continuous(10, 10000))
opt = decision.build(seed=0)
print("built:", type(opt).__name__, "for leaf", repr(decision.leaf))

target = np.linspace(-1.0, 1.0, 10)
while opt.num_ask < 10000:
    cand = opt.ask()
    opt.tell(cand, float(np.sum((cand.point - target) ** 2)))
final = float(np.sum((opt.recommend().point - target) ** 2))
print("final loss on a translated sphere:", final)
