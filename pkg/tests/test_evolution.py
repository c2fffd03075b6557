"""(1+1)-ES step-size adaptation and the population-control family."""

import numpy as np
import pytest

from shiwa import Candidate, Domain, DomainMismatch
from shiwa.optimizers import (OnePlusOneES, TBPSA, make_one_plus_one_es,
                              make_tbpsa, make_tbpsa_recombination)

from oracles import one_fifth_neutral_product
from support import drive, translated_sphere


# -- (1+1)-ES -----------------------------------------------------------------


def test_es_rejects_categorical_domains():
    with pytest.raises(DomainMismatch):
        OnePlusOneES(Domain.categorical([2, 2]))


def test_es_solves_translated_sphere():
    hits = sum(
        drive(make_one_plus_one_es(10, s, budget=5000),
              translated_sphere(s, 10, 10), 5000) < 1e-8
        for s in range(50)
    )
    assert hits >= 48, f"only {hits}/50 runs reached 1e-8"


def test_constant_objective_shrinks_sigma():
    opt = make_one_plus_one_es(5, seed=0)
    for _ in range(500):
        opt.tell(opt.ask(), 1.0)
    assert opt.sigma < 1.0


def test_improving_tell_moves_the_parent():
    opt = make_one_plus_one_es(3, seed=4)
    opt.tell(opt.ask(), 10.0)  # parent evaluation
    child = opt.ask()
    opt.tell(child, 5.0)
    np.testing.assert_array_equal(opt.parent, child.point)
    assert opt.parent_value == 5.0


def test_success_factors_are_neutral_at_one_fifth():
    assert one_fifth_neutral_product(OnePlusOneES.SUCCESS_FACTOR,
                                     OnePlusOneES.FAILURE_FACTOR) == pytest.approx(1.0)


def test_sigma_drift_vanishes_at_exact_one_fifth_success_rate():
    opt = make_one_plus_one_es(4, seed=8)
    opt.tell(opt.ask(), 100.0)
    value = 100.0
    for i in range(500):
        cand = opt.ask()
        if i % 5 == 4:  # every fifth mutation succeeds
            value -= 1.0
            opt.tell(cand, value)
        else:
            opt.tell(cand, value + 1.0)
    assert abs(np.log(opt.sigma)) < 0.05


def test_warm_start_parent_is_evaluated_first():
    start = np.array([3.0, -1.0])
    opt = OnePlusOneES(Domain.continuous(2), seed=0, initial_point=start)
    np.testing.assert_array_equal(opt.ask().point, start)


# -- TBPSA --------------------------------------------------------------------


def test_tbpsa_population_never_drops_below_initial():
    opt = make_tbpsa(5, seed=1, budget=4000)
    smallest = opt.mu
    while opt.num_ask < 4000:
        c = opt.ask()
        opt.tell(c, float(np.sum(c.point ** 2)))
        smallest = min(smallest, opt.mu)
    assert smallest >= opt.mu_init == 5


def test_forced_stagnation_grows_the_population():
    opt = make_tbpsa(4, seed=2)
    initial_mu = opt.mu
    grew = False
    for _ in range(30 * opt.llambda):
        opt.tell(opt.ask(), 1.0)  # constant fitness: no progress ever
        if opt.mu > initial_mu:
            grew = True
            break
    assert grew, "population did not grow under constant fitness"


def test_tbpsa_converges_on_noise_free_sphere():
    losses = sorted(
        drive(make_tbpsa(10, s, budget=12800), translated_sphere(s, 10, 13), 12800)
        for s in range(11)
    )
    assert losses[5] < 1e-2, f"median {losses[5]:.3g}"


def test_tbpsa_recommendation_is_mean_based():
    opt = make_tbpsa(2, seed=0)
    lucky, steady = np.array([2.0, 2.0]), np.array([0.5, 0.5])
    # lucky point: one great draw among bad ones; steady point: always decent
    for v in (5.0, -1.0, 5.0, 5.0):
        opt.tell(Candidate(lucky.copy()), v)
    for v in (1.0, 1.1, 0.9, 1.0):
        opt.tell(Candidate(steady.copy()), v)
    assert opt.archive.best_observation()[1] == -1.0
    np.testing.assert_array_equal(opt.recommend().point, steady)


# -- TBPSA with best-so-far recombination ---------------------------------------


def test_recombining_batches_are_distinct():
    opt = make_tbpsa_recombination(10, seed=3, budget=3200)
    batch = [opt.ask() for _ in range(100)]
    assert len({c.key() for c in batch}) == 100


def test_recombination_pulls_candidates_toward_the_best_point():
    opt = make_tbpsa_recombination(4, seed=5)
    far = np.full(4, 100.0)
    opt.tell(Candidate(far), -1e9)  # plant an extreme best-so-far
    batch = np.array([opt.ask().point for _ in range(64)])
    # midpoint recombination with (100,...): batch centers near 50
    np.testing.assert_allclose(batch.mean(axis=0), np.full(4, 50.0), atol=5.0)


def test_recombining_variant_solves_sphere_in_large_batches():
    losses = sorted(
        drive(make_tbpsa_recombination(10, s, budget=3200),
              translated_sphere(s, 10, 14), 3200, batch=100)
        for s in range(20)
    )
    assert losses[10] < 1e-1, f"median {losses[10]:.3g}"
