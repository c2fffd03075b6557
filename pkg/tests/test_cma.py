"""CMA-ES: distribution maintenance, convergence, and the softmax variant."""

import numpy as np
import pytest

from shiwa import Domain, DomainMismatch, subseed_rng
from shiwa.optimizers import (default_population_size, make_cma,
                              make_cma_softmax)
from shiwa.transforms import encode_dimension

from oracles import cma_default_lambda, onemax_loss
from support import drive, drive_discrete, translated_sphere


def test_default_population_size_formula():
    for d in (1, 2, 3, 5, 10, 40, 200):
        assert default_population_size(d) == cma_default_lambda(d)


def test_cma_requires_continuous_domain():
    from shiwa.optimizers import CMA
    with pytest.raises(DomainMismatch):
        CMA(Domain.categorical([3]))


def test_cma_solves_small_sphere():
    losses = sorted(
        drive(make_cma(2, s, budget=800), translated_sphere(s, 2, 11), 800)
        for s in range(20)
    )
    assert losses[10] < 1e-9, f"median {losses[10]:.3g}"


def test_cma_solves_rotated_ill_conditioned_ellipsoid():
    weights = 10.0 ** (6 * np.arange(10) / 9)  # condition number 1e6
    losses = []
    for s in range(20):
        rng = subseed_rng(777, s)
        q, r = np.linalg.qr(rng.standard_normal((10, 10)))
        rotation = q * np.sign(np.diag(r))
        t = rng.standard_normal(10)

        def ellipsoid(x, rotation=rotation, t=t):
            return float(np.sum(weights * (rotation @ (x - t)) ** 2))

        losses.append(drive(make_cma(10, s, budget=12800), ellipsoid, 12800))
    losses.sort()
    assert losses[10] < 1e-6, f"median {losses[10]:.3g}"


def test_covariance_stays_symmetric_positive_definite():
    def rastrigin(x):
        return float(10.0 * x.size + np.sum(x * x - 10.0 * np.cos(2 * np.pi * x)))

    opt = make_cma(10, seed=6)
    for _ in range(100):
        for _ in range(opt.population_size):
            c = opt.ask()
            opt.tell(c, rastrigin(c.point))
        cov = opt.cov
        np.testing.assert_allclose(cov, cov.T, atol=1e-12)
        eigvals = np.linalg.eigvalsh(cov)
        assert eigvals.min() > -1e-10 * eigvals.max()
    assert opt.generation == 100


def test_generation_updates_happen_every_lambda_tells():
    opt = make_cma(5, seed=0)
    lam = opt.population_size
    for i in range(3 * lam):
        c = opt.ask()
        opt.tell(c, float(np.sum(c.point ** 2)))
        assert opt.generation == (i + 1) // lam


# -- softmax variant -----------------------------------------------------------


def test_softmax_cma_rejects_fully_continuous_domains():
    with pytest.raises(DomainMismatch):
        make_cma_softmax(Domain.continuous(4), seed=0)


def test_softmax_cma_works_in_the_encoded_dimension():
    domain = Domain.categorical([2] * 30)
    opt = make_cma_softmax(domain, seed=0, budget=100)
    assert opt.dimension == encode_dimension(domain) == 60
    assert opt.ask().point.shape == (60,)


def test_softmax_cma_recommendation_decodes_to_legal_labels():
    domain = Domain.categorical([3, 4, 2])
    opt = make_cma_softmax(domain, seed=1, budget=200)
    drive_discrete(opt, lambda a: onemax_loss(a, target=0), 200)
    decoded = opt.recommend().decoded
    assert decoded is not None
    for label, var in zip(decoded, domain.variables):
        assert 0 <= label < var.cardinality


def test_softmax_cma_beats_uniform_random_search_on_binary_strings():
    domain = Domain.categorical([2] * 30)
    cma_losses, random_losses = [], []
    for s in range(20):
        cma_losses.append(drive_discrete(
            make_cma_softmax(domain, s, budget=3200),
            lambda a: float(np.sum(a)), 3200))
        rng = np.random.default_rng(s)
        random_losses.append(min(float(np.sum(rng.integers(0, 2, 30)))
                                 for _ in range(3200)))
    assert np.mean(cma_losses) < np.mean(random_losses), (
        f"softmax mean {np.mean(cma_losses):.2f} vs random {np.mean(random_losses):.2f}")


def test_softmax_cma_trace_is_deterministic():
    domain = Domain.categorical([2] * 5)

    def labels(seed):
        opt = make_cma_softmax(domain, seed=seed, budget=60)
        seen = []
        while opt.num_ask < 60:
            c = opt.ask()
            seen.append(c.decoded)
            opt.tell(c, float(np.sum(c.decoded)))
        return seen

    assert labels(9) == labels(9)
