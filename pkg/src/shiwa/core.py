"""Domain model and the ask/tell/recommend contract shared by every optimizer.

The pieces defined here are deliberately small:

* :class:`Domain` describes the search space as an ordered list of variables,
  each either continuous (unbounded real, standardized so that the natural
  sampling reference is the standard normal) or categorical with ``k >= 2``
  unordered labels.  A domain is *metrizable* iff it contains no categorical
  variable; this is the convention used by the selection wizard, not the
  topological notion.
* :class:`ProblemDescriptor` bundles the a-priori features the wizard
  branches on: encoded dimension, evaluation budget, degree of parallelism,
  noisiness, and the domain itself.
* :class:`Optimizer` is the stateful ask/tell/recommend base class.  ``ask``
  returns a :class:`Candidate` to evaluate next, ``tell`` reports an observed
  objective value (minimization everywhere), and ``recommend`` returns the
  current approximation of the optimum.
* :class:`Archive` records every told observation, keyed by the exact bit
  pattern of the candidate point, so that repeated evaluations of the same
  point (the backbone of noise handling) accumulate instead of overwrite.

Randomness contract: every optimizer owns a single ``numpy`` generator built
from its seed.  Optimizers that drive children (portfolios, chains, wrappers)
derive the child seeds through :func:`child_seed` so that nested combinations
stay reproducible, with ``child_seed(seed, 0) == seed``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ShiwaError",
    "BudgetExhausted",
    "NonFiniteValue",
    "NothingObserved",
    "DimensionMismatch",
    "DomainMismatch",
    "InvalidDescriptor",
    "ParallelismExceeded",
    "Continuous",
    "Categorical",
    "Domain",
    "ProblemDescriptor",
    "Candidate",
    "Archive",
    "Optimizer",
    "child_seed",
    "subseed_rng",
]


class ShiwaError(Exception):
    """Base class for all library errors."""


class BudgetExhausted(ShiwaError):
    """A budget-bound optimizer was asked beyond its budget."""


class NonFiniteValue(ShiwaError):
    """A NaN or infinite objective value was told."""


class NothingObserved(ShiwaError):
    """recommend() was called before any tell()."""


class DimensionMismatch(ShiwaError):
    """A vector does not match the expected encoded dimension."""


class DomainMismatch(ShiwaError):
    """An optimizer was built for a domain kind it does not support."""


class InvalidDescriptor(ShiwaError):
    """A ProblemDescriptor violates its invariants."""


class ParallelismExceeded(ShiwaError):
    """More candidates are outstanding than the optimizer supports."""


# ---------------------------------------------------------------------------
# Search-space description


@dataclass(frozen=True)
class Continuous:
    """An unbounded real variable on the standardized scale."""


@dataclass(frozen=True)
class Categorical:
    """An unordered categorical variable with labels ``0 .. cardinality-1``."""

    cardinality: int

    def __post_init__(self) -> None:
        if self.cardinality < 2:
            raise ValueError(f"categorical cardinality must be >= 2, got {self.cardinality}")


VariableSpec = Continuous | Categorical


@dataclass(frozen=True)
class Domain:
    """Ordered collection of variables defining the search space."""

    variables: tuple[VariableSpec, ...]

    def __post_init__(self) -> None:
        if not self.variables:
            raise ValueError("a domain needs at least one variable")
        object.__setattr__(self, "variables", tuple(self.variables))

    @classmethod
    def continuous(cls, num_variables: int) -> "Domain":
        """Fully continuous domain with `num_variables` real slots."""
        return cls(tuple(Continuous() for _ in range(num_variables)))

    @classmethod
    def categorical(cls, cardinalities) -> "Domain":
        """Fully categorical domain, one variable per cardinality."""
        return cls(tuple(Categorical(int(k)) for k in cardinalities))

    def is_metrizable(self) -> bool:
        """True iff no categorical variable is present."""
        return not any(isinstance(v, Categorical) for v in self.variables)

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def encoded_dimension(self) -> int:
        """Scalar slots after encoding: 1 per continuous, k per categorical."""
        total = 0
        for v in self.variables:
            total += v.cardinality if isinstance(v, Categorical) else 1
        return total


@dataclass(frozen=True)
class ProblemDescriptor:
    """A-priori problem features used for algorithm selection.

    ``dimension`` counts scalar slots after encoding (categorical variables
    contribute their cardinality), ``budget`` is the total number of allowed
    objective evaluations, and ``parallelism`` the maximum number of
    simultaneously outstanding asks.
    """

    dimension: int
    budget: int
    parallelism: int
    noisy: bool
    domain: Domain

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise InvalidDescriptor(f"dimension must be positive, got {self.dimension}")
        if self.budget < 1:
            raise InvalidDescriptor(f"budget must be positive, got {self.budget}")
        if not 1 <= self.parallelism <= self.budget:
            raise InvalidDescriptor(
                f"need 1 <= parallelism <= budget, got parallelism={self.parallelism} budget={self.budget}"
            )
        if self.dimension != self.domain.encoded_dimension:
            raise InvalidDescriptor(
                f"dimension {self.dimension} does not match the domain's encoded dimension "
                f"{self.domain.encoded_dimension}"
            )

    @classmethod
    def for_continuous(
        cls, dimension: int, budget: int, parallelism: int = 1, noisy: bool = False
    ) -> "ProblemDescriptor":
        return cls(dimension, budget, parallelism, noisy, Domain.continuous(dimension))

    @classmethod
    def from_domain(
        cls, domain: Domain, budget: int, parallelism: int = 1, noisy: bool = False
    ) -> "ProblemDescriptor":
        return cls(domain.encoded_dimension, budget, parallelism, noisy, domain)

    def is_sequential(self) -> bool:
        return self.parallelism == 1

    def is_continuous(self) -> bool:
        return self.domain.is_metrizable()


# ---------------------------------------------------------------------------
# Candidates and the archive


@dataclass(eq=False)
class Candidate:
    """A point in encoded space, plus its decoded variable assignment.

    For continuous domains the decoded assignment is the point itself and
    ``decoded`` stays ``None``; discrete and mixed optimizers attach the
    sampled assignment explicitly.
    """

    point: np.ndarray
    decoded: tuple | None = None
    meta: dict = field(default_factory=dict, repr=False)

    @property
    def assignment(self) -> tuple:
        """Per-variable values (labels for categorical variables)."""
        if self.decoded is not None:
            return self.decoded
        return tuple(self.point.tolist())

    def key(self) -> bytes:
        return self.point.tobytes()


def _freeze(point: np.ndarray) -> np.ndarray:
    pt = np.ascontiguousarray(point, dtype=float)
    pt.setflags(write=False)
    return pt


class _Entry:
    __slots__ = ("point", "values", "decoded", "order")

    def __init__(self, point: np.ndarray, decoded: tuple | None, order: int) -> None:
        self.point = point
        self.values: list[float] = []
        self.decoded = decoded
        self.order = order

    @property
    def count(self) -> int:
        return len(self.values)

    @property
    def mean(self) -> float:
        return sum(self.values) / len(self.values)


class Archive:
    """Multiset of (point -> observed values), keyed by exact bit pattern.

    Repeated tells of the same point append to its observation list, which is
    what noisy-optimization machinery relies on.  Entries keep insertion
    order; ties in the best-observation query resolve to the earliest entry.
    """

    def __init__(self) -> None:
        self._entries: dict[bytes, _Entry] = {}
        self.num_observations = 0
        self._best: tuple[float, _Entry] | None = None

    def add(self, point: np.ndarray, value: float, decoded: tuple | None = None) -> None:
        key = point.tobytes()
        entry = self._entries.get(key)
        if entry is None:
            entry = _Entry(_freeze(point), decoded, len(self._entries))
            self._entries[key] = entry
        entry.values.append(value)
        self.num_observations += 1
        if self._best is None or value < self._best[0]:
            self._best = (value, entry)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, point: np.ndarray) -> bool:
        return point.tobytes() in self._entries

    def __iter__(self):
        return iter(self._entries.values())

    def values_at(self, point: np.ndarray) -> list[float]:
        return list(self._entries[point.tobytes()].values)

    def count(self, point: np.ndarray) -> int:
        return self._entries[point.tobytes()].count

    def mean(self, point: np.ndarray) -> float:
        return self._entries[point.tobytes()].mean

    def best_observation(self) -> tuple[np.ndarray, float, tuple | None]:
        """Point with the minimal single observed value (earliest on ties)."""
        if self._best is None:
            raise NothingObserved("the archive is empty")
        value, entry = self._best
        return entry.point, value, entry.decoded

    def best_mean(self) -> tuple[np.ndarray, float, tuple | None]:
        """Point with the minimal mean observed value (earliest on ties)."""
        if not self._entries:
            raise NothingObserved("the archive is empty")
        best = min(self._entries.values(), key=lambda e: (e.mean, e.order))
        return best.point, best.mean, best.decoded


# ---------------------------------------------------------------------------
# The optimizer contract


class Optimizer:
    """Stateful minimizer driven through ask/tell/recommend.

    Subclasses implement :meth:`_ask` and usually :meth:`_tell`.  The base
    class owns budget accounting, the archive, validation, and the default
    recommendation rule (the archived point with the best single observed
    value, which is the right rule for every noise-free optimizer here).

    Tells of points that were never asked are accepted and archived; this is
    what lets chained optimizers warm-start from a predecessor's results.
    Optimizers are single-threaded state machines: they support up to
    ``max_outstanding`` asks before any tell (``None`` means unlimited) but
    perform no internal locking.
    """

    max_outstanding: int | None = None

    def __init__(self, domain: Domain, *, budget: int | None = None, seed=None) -> None:
        self.domain = domain
        self.dimension = domain.encoded_dimension
        self.budget = budget
        self.num_ask = 0
        self.num_tell = 0
        self.archive = Archive()
        if seed is None:
            seed = int(np.random.SeedSequence().generate_state(1)[0])
        self.seed = int(seed) % (1 << 64)
        self.rng = np.random.default_rng(self.seed)
        self._outstanding: dict[bytes, int] = {}
        self._num_outstanding = 0

    # -- public protocol ----------------------------------------------------

    def ask(self) -> Candidate:
        """Return the next candidate to evaluate."""
        if self.budget is not None and self.num_ask >= self.budget:
            raise BudgetExhausted(f"{type(self).__name__} exhausted its budget of {self.budget}")
        if self.max_outstanding is not None and self._num_outstanding >= self.max_outstanding:
            raise ParallelismExceeded(
                f"{type(self).__name__} supports at most {self.max_outstanding} outstanding ask(s)"
            )
        candidate = self._ask()
        self.num_ask += 1
        key = candidate.key()
        self._outstanding[key] = self._outstanding.get(key, 0) + 1
        self._num_outstanding += 1
        return candidate

    def tell(self, candidate: Candidate, value: float) -> None:
        """Report the objective value observed at `candidate`."""
        value = float(value)
        if not math.isfinite(value):
            raise NonFiniteValue(f"objective values must be finite, got {value}")
        key = candidate.key()
        count = self._outstanding.get(key, 0)
        asked = count > 0
        if asked:
            if count == 1:
                del self._outstanding[key]
            else:
                self._outstanding[key] = count - 1
            self._num_outstanding -= 1
        self.archive.add(candidate.point, value, candidate.decoded)
        self.num_tell += 1
        self._tell(candidate, value, asked)

    def recommend(self) -> Candidate:
        """Current approximation of the optimum."""
        if self.num_tell == 0:
            raise NothingObserved("recommend() requires at least one tell()")
        return self._recommend()

    # -- subclass hooks ------------------------------------------------------

    def _ask(self) -> Candidate:
        raise NotImplementedError

    def _tell(self, candidate: Candidate, value: float, asked: bool) -> None:
        pass

    def _recommend(self) -> Candidate:
        point, _, decoded = self.archive.best_observation()
        return Candidate(point, decoded)

    # -- helpers -------------------------------------------------------------

    def _candidate(self, point: np.ndarray, decoded: tuple | None = None) -> Candidate:
        return Candidate(_freeze(point), decoded)


# ---------------------------------------------------------------------------
# Deterministic seed derivation

_SEED_STEP = 0x9E3779B97F4A7C15  # 2**64 / golden ratio, odd


def child_seed(seed: int, index: int) -> int:
    """Derive the seed of child `index` of an optimizer seeded with `seed`.

    ``child_seed(seed, 0) == seed``, so wrapping a single optimizer in a
    combinator leaves its random stream untouched.
    """
    return (int(seed) + int(index) * _SEED_STEP) % (1 << 64)


def subseed_rng(*keys: int) -> np.random.Generator:
    """Fresh generator deterministically derived from a tuple of integers.

    Callers must keep the last key nonzero when independence from plain
    ``default_rng(first_key)`` matters: SeedSequence collapses trailing
    zero entropy words, so ``subseed_rng(s, 0)`` aliases ``subseed_rng(s)``.
    """
    return np.random.default_rng(np.random.SeedSequence([int(k) % (1 << 64) for k in keys]))
