"""Independent reference computations used by the test suite.

Everything here is deliberately written from first principles (plain Python,
no imports from the package under test) so that expected values in tests do
not share code paths with the implementation they check.
"""

from __future__ import annotations

import math
from fractions import Fraction


# -- softmax ----------------------------------------------------------------


def softmax_reference(logits):
    """Direct softmax without stabilization tricks (small inputs only)."""
    exps = [math.exp(v) for v in logits]
    total = sum(exps)
    return [e / total for e in exps]


# -- progressive widening ---------------------------------------------------


def integer_cbrt(n: int) -> int:
    """Largest k with k**3 <= n, exact for arbitrarily large integers."""
    if n < 0:
        raise ValueError("n must be non-negative")
    k = round(n ** (1.0 / 3.0))
    while k > 0 and k * k * k > n:
        k -= 1
    while (k + 1) ** 3 <= n:
        k += 1
    return k


def widening_indices(limit: int) -> set[int]:
    """All n in 1..limit where floor(n^(1/3)) exceeds floor((n-1)^(1/3)).

    By construction this is exactly the set of perfect cubes in range.
    """
    return {n for n in range(1, limit + 1) if integer_cbrt(n) > integer_cbrt(n - 1)}


def perfect_cubes(limit: int) -> set[int]:
    cubes = set()
    k = 1
    while k * k * k <= limit:
        cubes.add(k * k * k)
        k += 1
    return cubes


# -- pairwise win-rate scoring ----------------------------------------------


def brute_force_win_matrix(losses):
    """Pairwise win frequencies from {optimizer: {cell: loss}} tables.

    Returns ({(o, o'): Fraction}, {(o, o'): shared-cell count}).  Wins count
    1, ties 1/2, computed in exact rational arithmetic.
    """
    optimizers = sorted(losses)
    wins: dict[tuple[str, str], Fraction] = {}
    counts: dict[tuple[str, str], int] = {}
    for a in optimizers:
        for b in optimizers:
            shared = sorted(set(losses[a]) & set(losses[b]))
            counts[(a, b)] = len(shared)
            if a == b:
                wins[(a, b)] = Fraction(1, 2)
                continue
            if not shared:
                wins[(a, b)] = Fraction(0)
                continue
            total = Fraction(0)
            for cell in shared:
                if losses[a][cell] < losses[b][cell]:
                    total += 1
                elif losses[a][cell] == losses[b][cell]:
                    total += Fraction(1, 2)
            wins[(a, b)] = total / len(shared)
    return wins, counts


# -- budget partitions ------------------------------------------------------


def chain_stage_budgets(fractions, total: int) -> list[int]:
    """floor(f_i * T) per stage, remainder assigned to the last stage."""
    sizes = [math.floor(f * total) for f in fractions[:-1]]
    sizes.append(total - sum(sizes))
    return sizes


def round_robin_counts(num_slots: int, k: int) -> list[int]:
    """How many of slots 0..num_slots-1 each of k round-robin players gets."""
    counts = [0] * k
    for j in range(num_slots):
        counts[j % k] += 1
    return counts


# -- low-discrepancy sequences ----------------------------------------------


def radical_inverse(i: int, base: int, permutation=None) -> float:
    """Van der Corput radical inverse of i in the given base.

    `permutation` optionally remaps digit values; digits are produced least
    significant first, exactly as the textbook definition.
    """
    inv = 0.0
    scale = 1.0 / base
    while i > 0:
        digit = i % base
        if permutation is not None:
            digit = permutation[digit]
        inv += digit * scale
        scale /= base
        i //= base
    return inv


def first_primes(count: int) -> list[int]:
    primes = []
    n = 2
    while len(primes) < count:
        if all(n % p for p in primes):
            primes.append(n)
        n += 1
    return primes


# -- simple function optima and formulas ------------------------------------


def sphere(x) -> float:
    return sum(v * v for v in x)


def onemax_loss(labels, target=1) -> float:
    """Number of positions differing from the all-`target` string."""
    return float(sum(1 for v in labels if v != target))


def cma_default_lambda(d: int) -> int:
    return 4 + math.floor(3 * math.log(d))


def one_fifth_neutral_product(f_plus: float, f_minus: float) -> float:
    """Step-size multiplier accumulated over one success and four failures."""
    return f_plus * f_minus**4


def quadratic_1d_min(a: float, b: float, c: float) -> float:
    """Argmin of a*t^2 + b*t + c (a > 0)."""
    if a <= 0:
        raise ValueError("not strictly convex")
    return -b / (2 * a)
