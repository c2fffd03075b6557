"""(1+1) discrete EAs: mutation strengths, elitism, encoding."""

import numpy as np
import pytest

from shiwa import Domain, DomainMismatch
from shiwa.optimizers import (DiscreteOnePlusOne, make_discrete_uniform_mix,
                              make_fastga, onehot_encode)

from support import drive_discrete, onemax


def test_rejects_fully_continuous_domain():
    with pytest.raises(DomainMismatch):
        DiscreteOnePlusOne(Domain.continuous(4))


def test_unknown_mutation_scheme():
    with pytest.raises(ValueError):
        DiscreteOnePlusOne(Domain.categorical([2, 2]), mutation="gaussian")


def test_onehot_encode_blocks():
    dom = Domain.categorical([3, 2, 4])
    point = onehot_encode(dom, (2, 0, 1))
    expected = np.zeros(9)
    expected[2] = 1.0   # label 2 of the first block
    expected[3] = 1.0   # label 0 of the second
    expected[6] = 1.0   # label 1 of the third
    assert np.array_equal(point, expected)


def test_fastga_solves_onemax_50():
    dom = Domain.categorical([2] * 50)
    hits = 0
    for s in range(50):
        opt = make_fastga(dom, seed=s, budget=3200)
        if drive_discrete(opt, onemax, 3200) == 0.0:
            hits += 1
    assert hits >= 40


def test_uniform_mix_solves_onemax_20():
    dom = Domain.categorical([2] * 20)
    hits = 0
    for s in range(50):
        opt = make_discrete_uniform_mix(dom, seed=s, budget=2000)
        if drive_discrete(opt, onemax, 2000) == 0.0:
            hits += 1
    assert hits >= 45


def test_mutation_rate_stays_in_range():
    dom = Domain.categorical([3] * 12)
    opt = make_discrete_uniform_mix(dom, seed=5, budget=400)
    drive_discrete(opt, onemax, 400)
    n = 12
    # the last generation's rate is r/n with r in {1, ..., n//2}
    assert opt.last_rate is not None
    assert 1 / n <= opt.last_rate <= 0.5


def test_fastga_prefers_single_bit_flips():
    # beta = 1.5 puts most of the strength mass on r = 1; over many
    # generations the expected number of flipped variables stays near one
    dom = Domain.categorical([2] * 40)
    opt = make_fastga(dom, seed=11, budget=10001)
    first = opt.ask()
    opt.tell(first, 0.0)  # freeze this parent
    parent = first.decoded
    flips = 0
    draws = 10000
    for _ in range(draws):
        child = opt.ask()
        flips += sum(a != b for a, b in zip(child.decoded, parent))
        opt.tell(child, 1.0)  # strictly worse, parent unchanged
    mean_flips = flips / draws
    assert 0.9 <= mean_flips <= 3.0


def test_parent_value_non_increasing():
    dom = Domain.categorical([4] * 10)
    opt = make_fastga(dom, seed=2, budget=600)
    rng = np.random.default_rng(3)
    opt.tell(opt.ask(), float(rng.random()))
    previous = opt.parent_value
    for _ in range(400):
        opt.tell(opt.ask(), float(rng.random()))
        assert opt.parent_value <= previous
        previous = opt.parent_value


def test_asked_ties_adopt_but_unasked_ties_do_not():
    dom = Domain.categorical([2] * 4)
    opt = make_discrete_uniform_mix(dom, seed=0, budget=50)
    first = opt.ask()
    opt.tell(first, 1.0)
    assert opt.parent == first.decoded

    child = opt.ask()
    opt.tell(child, 1.0)  # tie on an asked candidate: adopt (drift)
    assert opt.parent == child.decoded

    from shiwa import Candidate
    foreign = (1, 1, 1, 1)
    cand = Candidate(onehot_encode(dom, foreign), foreign)
    opt.tell(cand, 1.0)  # tie on an unasked candidate: keep the parent
    assert opt.parent == child.decoded
    opt.tell(cand, 0.5)  # strict improvement is adopted
    assert opt.parent == foreign


def test_set_incumbent_overrides_parent():
    dom = Domain.categorical([3, 3, 3])
    opt = make_discrete_uniform_mix(dom, seed=1, budget=50)
    opt.tell(opt.ask(), 2.0)
    opt.set_incumbent((2, 2, 2), 0.25)
    assert opt.parent == (2, 2, 2)
    assert opt.parent_value == 0.25


def test_recombination_with_best_still_solves_onemax():
    dom = Domain.categorical([2] * 30)
    finals = []
    for s in range(20):
        opt = make_discrete_uniform_mix(dom, seed=s, budget=2000,
                                        recombine_with_best=True)
        finals.append(drive_discrete(opt, onemax, 2000))
    assert np.median(finals) == 0.0
