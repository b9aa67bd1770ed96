#!/usr/bin/env python
"""
Seeded random samples for the randomized fixture checks.
"""

# jetviber - jet-space calculus for variational bivectors
# Copyright (C) 2024 the jetviber developers
#     The MIT License (MIT), see LICENSE.txt

import numpy as np

DEFAULT_SEED = 20130426


def generator(seed=None):
    """``numpy.random.Generator``; the default seed keeps reports reproducible."""
    return np.random.default_rng(DEFAULT_SEED if seed is None else seed)


def random_combination(n_vectors, rng, bound=3):
    """
    Integer weights in ``[-bound, bound]``, not all zero.

    Arguments:
        n_vectors (int): number of weights
        rng (numpy.random.Generator): source of randomness

    Returns:
        list of int
    """
    if n_vectors == 0:
        return []
    while True:
        weights = rng.integers(-bound, bound, size=n_vectors, endpoint=True)
        if weights.any():
            return [int(w) for w in weights]


def combine_vectors(vectors, weights):
    """``sum w_i v_i`` of integer vectors of equal length."""
    matrix = np.array(vectors, dtype=object).reshape(len(vectors), -1)
    return [int(v) for v in np.dot(np.array(weights, dtype=object), matrix)]


def random_instances(vectors, count, rng=None, bound=3):
    """
    ``count`` random integer combinations of the given basis vectors.

    Returns:
        list of list of int
    """
    if not vectors:
        return []
    if rng is None:
        rng = generator()
    return [
        combine_vectors(vectors, random_combination(len(vectors), rng, bound))
        for _ in range(count)
    ]


__all__ = ["generator", "random_combination", "combine_vectors", "random_instances"]
