"""The 21-function test catalog.

The formulas below are the normative definitions for this artifact.  The
smooth quadratic family (Sphere through BentCigar), Rastrigin, Griewank,
Rosenbrock and Ackley follow the classical BBOB-style definitions; Lunacek
is the double-sphere/double-Rastrigin hybrid with mu1 = 2.5; Hm is the
oscillating-weight quadratic sum(x^2 * (1.1 + cos(1/x))).  Multipeak, the
two linear-slope functions, and the three Deceptive* functions are explicit
stand-ins with the intended character (many local optima, piecewise-linear
ridge, plateaued ridge, deceptive conditioning / multimodality / curved
path); their exact shape is documented here and nothing else in the
artifact depends on it.

All evaluators take a 1-d float array and return a scalar.  Unless noted
otherwise the minimum value is 0 at the origin; Rosenbrock's sits at the
all-ones point and Lunacek's at mu1 times the all-ones point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["TestFunction", "FUNCTIONS", "function_names", "get_function"]


@dataclass(frozen=True)
class TestFunction:
    name: str
    evaluator: Callable[[np.ndarray], float]
    optimum_description: str

    def __call__(self, x: np.ndarray) -> float:
        return float(self.evaluator(np.asarray(x, dtype=float)))


def _axis_weights(d: int, exponent_span: float = 6.0) -> np.ndarray:
    # 10^(span*(i-1)/(d-1)) for i = 1..d; flat in dimension 1
    if d == 1:
        return np.ones(1)
    return 10.0 ** (exponent_span * np.arange(d) / (d - 1))


def sphere(x):
    return np.sum(x * x)


def cigar(x):
    # one cheap direction, the rest 1e6 times stiffer
    if x.size == 1:
        return x[0] * x[0]
    return x[0] * x[0] + 1e6 * np.sum(x[1:] * x[1:])


def altcigar(x):
    # cigar with the cheap direction last
    return cigar(x[::-1])


def ellipsoid(x):
    return np.sum(_axis_weights(x.size) * x * x)


def altellipsoid(x):
    return ellipsoid(x[::-1])


def stepellipsoid(x):
    return ellipsoid(np.floor(x))


def discus(x):
    if x.size == 1:
        return x[0] * x[0]
    return 1e6 * x[0] * x[0] + np.sum(x[1:] * x[1:])


def bentcigar(x):
    # cigar after the standard asymmetric warp of positive coordinates;
    # the warp overflows to inf at extreme probes, which the instance
    # layer clamps to a large finite ceiling
    d = x.size
    exponents = 1.0 + (0.5 * np.arange(d) / max(d - 1, 1)) * np.sqrt(np.maximum(x, 0.0))
    with np.errstate(over="ignore"):
        z = np.where(x > 0, np.abs(x) ** exponents, x)
        return cigar(z)


def rastrigin(x):
    return 10.0 * x.size + np.sum(x * x - 10.0 * np.cos(2 * np.pi * x))


def bucherastrigin(x):
    # Rastrigin with asymmetric axis weights: odd-indexed positive
    # coordinates get a tenfold weight boost
    d = x.size
    s = 10.0 ** (0.5 * np.arange(d) / max(d - 1, 1))
    boost = np.where((np.arange(d) % 2 == 0) & (x > 0), 10.0, 1.0)
    z = s * boost * x
    return 10.0 * (d - np.sum(np.cos(2 * np.pi * z))) + np.sum(z * z)


def griewank(x):
    norm = np.sum(x * x) / 4000.0
    prod = np.prod(np.cos(x / np.sqrt(np.arange(1, x.size + 1))))
    return 1.0 + norm - prod


def rosenbrock(x):
    if x.size == 1:
        return (1.0 - x[0]) ** 2
    return np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2)


def ackley(x):
    d = x.size
    return (20.0 + np.e
            - 20.0 * np.exp(-0.2 * np.sqrt(np.sum(x * x) / d))
            - np.exp(np.sum(np.cos(2 * np.pi * x)) / d))


def lunacek(x):
    # double-funnel: a sphere basin at mu1 competing with a penalized
    # basin at mu2, plus Rastrigin ripples; minimum 0 at mu1 * ones
    d = x.size
    s = 1.0 - 1.0 / (2.0 * np.sqrt(d + 20.0) - 8.2)
    mu1 = 2.5
    mu2 = -np.sqrt((mu1 * mu1 - 1.0) / s)
    first = np.sum((x - mu1) ** 2)
    second = d + s * np.sum((x - mu2) ** 2)
    ripple = 10.0 * np.sum(1.0 - np.cos(2 * np.pi * (x - mu1)))
    return min(first, second) + ripple


def hm(x):
    # per-coordinate x^2 * (1.1 + cos(1/x)); the factor oscillates ever
    # faster toward 0 but the x^2 envelope keeps the value and limit 0
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = x * x * (1.1 + np.cos(1.0 / x))
    return np.sum(np.where(x == 0.0, 0.0, terms))


def multipeak(x):
    # grid of Gaussian-windowed peaks; global minimum 0 at the origin,
    # value saturating at d far from all peaks
    return x.size - np.sum(np.exp(-x * x / 10.0) * np.cos(2.0 * x) ** 2)


def doublelinearslope(x):
    # two affine half-spaces meeting at the hyperplane sum(x) = 0
    return np.abs(np.sum(x)) / x.size


def stepdoublelinearslope(x):
    return np.abs(np.sum(np.floor(x))) / x.size


def deceptiveillcond(x):
    # a square-root kink along the first axis (infinite slope at 0)
    # against extreme curvature on all others
    if x.size == 1:
        return np.sqrt(np.abs(x[0]))
    return np.sqrt(np.abs(x[0])) + 1e6 * np.sum(x[1:] * x[1:])


def deceptivemultimodal(x):
    # chirped cosine: the oscillation accelerates away from the optimum,
    # so basin widths mislead about the direction of the global minimum
    return np.sum(0.1 * x * x + (1.0 - np.cos(np.pi * x * (x + 3.0))))


def deceptivepath(x):
    # narrow curved valley: each coordinate must track a nonlinear image
    # of its predecessor to reach the minimum at the origin
    if x.size == 1:
        return x[0] * x[0]
    return x[0] * x[0] + 100.0 * np.sum((x[1:] - np.sin(3.0 * x[:-1])) ** 2)


_CATALOG = [
    TestFunction("Sphere", sphere, "0 at the origin"),
    TestFunction("Cigar", cigar, "0 at the origin"),
    TestFunction("AltCigar", altcigar, "0 at the origin"),
    TestFunction("Ellipsoid", ellipsoid, "0 at the origin"),
    TestFunction("AltEllipsoid", altellipsoid, "0 at the origin"),
    TestFunction("StepEllipsoid", stepellipsoid, "0 on the unit cell at the origin"),
    TestFunction("Discus", discus, "0 at the origin"),
    TestFunction("BentCigar", bentcigar, "0 at the origin"),
    TestFunction("Rastrigin", rastrigin, "0 at the origin"),
    TestFunction("BucheRastrigin", bucherastrigin, "0 at the origin"),
    TestFunction("Griewank", griewank, "0 at the origin"),
    TestFunction("Rosenbrock", rosenbrock, "0 at the all-ones point"),
    TestFunction("Ackley", ackley, "0 at the origin"),
    TestFunction("Lunacek", lunacek, "0 at 2.5 times the all-ones point"),
    TestFunction("Hm", hm, "0 at the origin"),
    TestFunction("Multipeak", multipeak, "0 at the origin"),
    TestFunction("DoubleLinearSlope", doublelinearslope, "0 on the hyperplane sum(x)=0"),
    TestFunction("StepDoubleLinearSlope", stepdoublelinearslope,
                 "0 where the floored coordinates sum to 0"),
    TestFunction("DeceptiveIllcond", deceptiveillcond, "0 at the origin"),
    TestFunction("DeceptiveMultimodal", deceptivemultimodal, "0 at the origin"),
    TestFunction("DeceptivePath", deceptivepath, "0 at the origin"),
]

FUNCTIONS: dict[str, TestFunction] = {f.name: f for f in _CATALOG}


def function_names() -> list[str]:
    return [f.name for f in _CATALOG]


def get_function(name: str) -> TestFunction:
    try:
        return FUNCTIONS[name]
    except KeyError:
        known = ", ".join(function_names())
        raise KeyError(f"unknown test function {name!r}; known functions: {known}") from None
