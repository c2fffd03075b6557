"""Powell and the Cobyla-style trust-region method."""

import numpy as np
import pytest

from shiwa import (BudgetExhausted, Domain, DomainMismatch,
                   ParallelismExceeded, subseed_rng)
from shiwa.local_search import CobylaLike, make_cobyla_like, make_powell

from support import drive, translated_sphere


def test_rejects_categorical_domains():
    with pytest.raises(DomainMismatch):
        CobylaLike(Domain.categorical([2, 3]))
    from shiwa.local_search import Powell
    with pytest.raises(DomainMismatch):
        Powell(Domain.categorical([2, 3]))


def test_strictly_sequential():
    opt = make_powell(3, seed=0, budget=10)
    opt.ask()
    with pytest.raises(ParallelismExceeded):
        opt.ask()


def test_budget_is_enforced():
    opt = make_cobyla_like(2, seed=0, budget=5)
    for _ in range(5):
        c = opt.ask()
        opt.tell(c, float(np.sum(c.point ** 2)))
    with pytest.raises(BudgetExhausted):
        opt.ask()


def test_first_ask_is_the_start_point():
    start = np.array([3.0, -1.0, 0.5])
    for factory in (make_powell, make_cobyla_like):
        opt = factory(3, seed=1, start_point=start, budget=50)
        first = opt.ask()
        assert np.array_equal(first.point, start)
        opt.tell(first, 9.0)
        assert np.array_equal(opt.recommend().point, start)


def test_default_start_is_the_origin():
    opt = make_powell(4, seed=2, budget=10)
    assert np.array_equal(opt.ask().point, np.zeros(4))


def test_powell_general_quadratic_5d():
    # dense SPD quadratic; conjugate directions should finish it off
    worst = 0.0
    for s in range(20):
        rng = subseed_rng(s, 0)
        m = rng.standard_normal((5, 5))
        a = m @ m.T + 5 * np.eye(5)
        t = rng.standard_normal(5)
        fn = lambda x: float((x - t) @ a @ (x - t))
        start = subseed_rng(s, 1).standard_normal(5)
        opt = make_powell(5, seed=s, start_point=start, budget=2000)
        worst = max(worst, drive(opt, fn, 2000))
    assert worst < 1e-10


def test_powell_axis_aligned_cigar_10d():
    finals = []
    for s in range(20):
        t = subseed_rng(s, 2).standard_normal(10)
        fn = lambda x: float((x - t)[0] ** 2 + 1e6 * np.sum((x - t)[1:] ** 2))
        opt = make_powell(10, seed=s, budget=10000)
        finals.append(drive(opt, fn, 10000))
    assert np.median(finals) < 1e-6


def test_cobyla_translated_sphere_10d():
    finals = []
    for s in range(20):
        fn = translated_sphere(s, 10, 3)
        opt = make_cobyla_like(10, seed=s, budget=300)
        finals.append(drive(opt, fn, 300))
    assert np.median(finals) < 1e-2


def test_cobyla_expands_on_a_linear_slope():
    # exact linear objective: every trust step achieves its predicted
    # decrease, so the radius only ever doubles
    c = np.array([1.0, 2.0, -1.0])
    fn = lambda x: float(c @ x)
    opt = make_cobyla_like(3, seed=4, budget=60)
    final = drive(opt, fn, 60)
    assert opt.num_expansions > 5
    assert opt.radius == opt.initial_radius * 2 ** opt.num_expansions
    assert final < -1000.0


def test_cobyla_radius_invariant():
    rastrigin = lambda x: float(10 * x.size + np.sum(x ** 2 - 10 * np.cos(2 * np.pi * x)))
    opt = make_cobyla_like(4, seed=6, budget=400)
    drive(opt, rastrigin, 400)
    assert opt.radius >= opt.MIN_RADIUS
    assert opt.radius <= opt.initial_radius * 2 ** opt.num_expansions


def test_unasked_tells_do_not_reach_the_line_search():
    from shiwa import Candidate
    opt = make_powell(2, seed=7, budget=40)
    sphere2 = lambda x: float(np.sum(x ** 2))
    trace = []
    for _ in range(10):
        cand = opt.ask()
        trace.append(cand.point.copy())
        opt.tell(cand, sphere2(cand.point))
        # archive dump between probes, as a chain warm start would produce
        opt.tell(Candidate(np.array([50.0, 50.0])), 5000.0)

    replay = make_powell(2, seed=7, budget=40)
    for point in trace:
        cand = replay.ask()
        assert np.array_equal(cand.point, point)
        replay.tell(cand, sphere2(cand.point))
