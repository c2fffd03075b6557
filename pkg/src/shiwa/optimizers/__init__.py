"""Base optimizers: evolution strategies, CMA, DE, PSO, discrete EAs, one-shot."""

from .cma import CMA, SoftmaxCMA, default_population_size, make_cma, make_cma_softmax
from .de import DifferentialEvolution, make_de
from .discrete import (DiscreteOnePlusOne, make_discrete_uniform_mix, make_fastga,
                       onehot_encode)
from .evolution import (TBPSA, OnePlusOneES, make_one_plus_one_es, make_tbpsa,
                        make_tbpsa_recombination)
from .oneshot import (MetaRecentering, RandomSearch, make_metarecentering,
                      make_random_search)
from .pso import PSO, make_pso

__all__ = [
    "CMA", "SoftmaxCMA", "default_population_size", "make_cma", "make_cma_softmax",
    "DifferentialEvolution", "make_de",
    "DiscreteOnePlusOne", "make_discrete_uniform_mix", "make_fastga", "onehot_encode",
    "TBPSA", "OnePlusOneES", "make_one_plus_one_es", "make_tbpsa",
    "make_tbpsa_recombination",
    "MetaRecentering", "RandomSearch", "make_metarecentering", "make_random_search",
    "PSO", "make_pso",
]
