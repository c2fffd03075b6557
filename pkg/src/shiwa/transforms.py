"""Encoding of mixed domains into flat real vectors.

Continuous variables map to a single slot, untouched.  A categorical
variable with k labels maps to a block of k real logits; decoding draws the
label from the softmax distribution over the block.  This keeps every
encoded space an unconstrained R^n, so continuous optimizers apply verbatim
to discrete and mixed problems, at the price of stochastic decoding.
"""

from __future__ import annotations

import numpy as np

from .core import Categorical, Continuous, DimensionMismatch, Domain

__all__ = ["encode_dimension", "softmax_probabilities", "sample_decode", "block_slices"]


def encode_dimension(domain: Domain) -> int:
    """Scalar slots after encoding: 1 per continuous variable, k per categorical."""
    return domain.encoded_dimension


def softmax_probabilities(logits: np.ndarray) -> np.ndarray:
    """Softmax over one block of logits, stabilized by max subtraction."""
    z = np.asarray(logits, dtype=float)
    z = z - z.max()
    e = np.exp(z)
    return e / e.sum()


def block_slices(domain: Domain) -> list[slice]:
    """Per-variable slices into the encoded vector."""
    slices = []
    offset = 0
    for var in domain.variables:
        width = var.cardinality if isinstance(var, Categorical) else 1
        slices.append(slice(offset, offset + width))
        offset += width
    return slices


def sample_decode(logits: np.ndarray, domain: Domain, rng: np.random.Generator) -> tuple:
    """Decode an encoded point into per-variable values.

    Continuous slots pass through; each categorical block yields one label
    drawn from its softmax distribution.  The draw consumes exactly one
    uniform variate per categorical variable, via inverse transform on the
    cumulative probabilities.
    """
    logits = np.asarray(logits, dtype=float)
    if logits.shape != (domain.encoded_dimension,):
        raise DimensionMismatch(
            f"expected an encoded point of dimension {domain.encoded_dimension}, "
            f"got shape {logits.shape}"
        )
    out = []
    for var, sl in zip(domain.variables, block_slices(domain)):
        if isinstance(var, Continuous):
            out.append(float(logits[sl.start]))
        else:
            probs = softmax_probabilities(logits[sl])
            u = rng.random()
            # searchsorted on the cdf; right edge guard for u == 1.0 roundup
            label = int(np.searchsorted(np.cumsum(probs), u, side="right"))
            out.append(min(label, var.cardinality - 1))
    return tuple(out)
