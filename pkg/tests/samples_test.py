#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Part of jetviber test cases
"""
import os
import sys

sys.path.append(os.path.abspath("."))
import unittest

from jetviber.utils import samples


class SamplesTest(unittest.TestCase):
    def test_reproducible(self):
        vectors = [(1, 0, 2), (0, 1, -1)]
        first = samples.random_instances(vectors, 4, samples.generator(7))
        second = samples.random_instances(vectors, 4, samples.generator(7))
        self.assertEqual(first, second)
        self.assertEqual(samples.random_instances(vectors, 2), samples.random_instances(vectors, 2))

    def test_combination_is_never_zero(self):
        rng = samples.generator()
        for _ in range(50):
            weights = samples.random_combination(2, rng, bound=1)
            self.assertTrue(any(weights))
            self.assertTrue(all(-1 <= w <= 1 for w in weights))

    def test_combine_vectors(self):
        self.assertEqual(samples.combine_vectors([(1, 0), (0, 1)], [2, 3]), [2, 3])
        self.assertEqual(samples.combine_vectors([(1, 2, 3)], [-1]), [-1, -2, -3])

    def test_no_vectors(self):
        self.assertEqual(samples.random_instances([], 3), [])
        self.assertEqual(samples.random_combination(0, samples.generator()), [])


if __name__ == "__main__":
    unittest.main(verbosity=3)
