"""Minimal tour of the ask/tell/recommend protocol.

Every optimizer in the library speaks the same three verbs: ask() hands out
a candidate, tell() reports its loss, recommend() returns the best guess so
far.  The loop below drives a (1+1)-ES on a shifted quadratic.
"""

import numpy as np

from shiwa.optimizers import make_one_plus_one_es

target = np.array([1.5, -0.5, 2.0, 0.0, -1.0])


def loss(x):
    return float(np.sum((x - target) ** 2))


opt = make_one_plus_one_es(5, seed=42, budget=2000)

while opt.num_ask < 2000:
    cand = opt.ask()            # one candidate at a time; ES is sequential
    opt.tell(cand, loss(cand.point))

best = opt.recommend()
print("recommendation:", np.round(best.point, 4))
print("loss of recommendation:", loss(best.point))

# every evaluation was archived; the archive keeps points, values and the
# order they arrived in
print("archive size:", len(opt.archive))
point, value, _ = opt.archive.best_observation()
print("best observed value:", value)

# asking past the budget raises instead of silently continuing
try:
    opt.ask()
except Exception as err:
    print("asking after the budget:", type(err).__name__, "-", err)
