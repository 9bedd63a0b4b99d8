#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for numerical verification of realizations
"""

import unittest

import numpy as np

from embedkit.core.embed import embed_diagonal, embed_shift_translation, embed_zero_infinite
from embedkit.core.errors import InadmissibleTimeError
from embedkit.core.operators import BlockRightShift, MatrixOperator
from embedkit.core.cardinal import INFINITE
from embedkit.core.semigroup import AdmissibleTimes, SemigroupRealization, constant_identity
from embedkit.core.settings import load_settings
from embedkit.core.verify import (
    check_embedding, continuity_sweep, default_h_list, estimate_generator, generator_convergence,
    probe_vectors
)


def _linear_family(dim: int) -> SemigroupRealization:
    """(1 + t)·I: right endpoint, wrong semigroup law."""
    return SemigroupRealization(dim=dim, method="dunford_log", times=AdmissibleTimes.continuous(),
                                kernel=lambda t: (1.0 + t) * np.eye(dim, dtype=complex))


class TestCheckEmbedding(unittest.TestCase):

    def test_identity_semigroup(self):
        """Test that the constant identity passes every check"""
        report = check_embedding(constant_identity(3), MatrixOperator.identity(3))
        self.assertTrue(report.passed)
        self.assertEqual(report.endpoint_residual, 0.0)
        self.assertEqual(report.cocycle_residual_max, 0.0)
        self.assertEqual(report.identity_residual, 0.0)
        self.assertEqual(report.generator_residual, 0.0)
        self.assertEqual(len(report.continuity_profile), 10)

    def test_broken_family(self):
        """Test that a family violating the semigroup law fails"""
        report = check_embedding(_linear_family(2), MatrixOperator(2.0 * np.eye(2)))
        self.assertFalse(report.passed)
        self.assertLess(report.endpoint_residual, 1e-15)
        self.assertGreater(report.cocycle_residual_max, 0.1)
        self.assertTrue(any(f.startswith("cocycle") for f in report.failures))

    def test_wrong_target(self):
        """Test that the endpoint is compared with the target"""
        report = check_embedding(embed_diagonal([2.0]), MatrixOperator(np.array([[3.0]])))
        self.assertFalse(report.passed)
        self.assertAlmostEqual(report.endpoint_residual, 1.0)

    def test_generator_residual(self):
        """Test the generator residual of diag(2^t)"""
        report = check_embedding(embed_diagonal([2.0]), MatrixOperator(np.array([[2.0]])))
        self.assertTrue(report.passed)
        self.assertLess(report.generator_residual, 4e-4)
        self.assertIn("generator", report.tolerances)

    def test_huge_generator(self):
        """Test that a generator too large for exp(h·‖G‖) leaves the bound infinite"""
        s = embed_diagonal([2.0], branch_offsets=[200000])
        report = check_embedding(s, MatrixOperator(np.array([[2.0]])))
        self.assertEqual(report.tolerances["generator"], float("inf"))
        self.assertFalse(any(f.startswith("generator") for f in report.failures))

    def test_grid_realization(self):
        """Test that a grid realization is sampled on its lattice"""
        op = BlockRightShift(INFINITE, 4, 8)
        s = embed_shift_translation(4, 8)
        report = check_embedding(s, op)
        self.assertTrue(report.passed)
        self.assertIsNone(report.generator_residual)
        for t in report.samples_used["time_samples"]:
            self.assertEqual(t * 4, round(t * 4))
        with self.assertRaises(InadmissibleTimeError):
            check_embedding(embed_zero_infinite(4), np.zeros((4, 4)), time_samples=[0.3])

    def test_explicit_tolerances(self):
        """Test that explicit thresholds replace the method defaults"""
        report = check_embedding(embed_diagonal([2.0]), MatrixOperator(np.array([[2.0 + 1e-4]])),
                                 tolerances={'endpoint': 1e-3})
        self.assertTrue(report.passed)
        self.assertEqual(report.tolerances['endpoint'], 1e-3)

    def test_shape_mismatch(self):
        """Test that the target must match the realization"""
        with self.assertRaises(ValueError):
            check_embedding(constant_identity(2), MatrixOperator.identity(3))

    def test_report_dict(self):
        """Test the plain form of a report"""
        data = check_embedding(constant_identity(2), MatrixOperator.identity(2)).to_dict()
        self.assertTrue(data["pass"])
        self.assertEqual(data["samples_used"]["cocycle_pairs"], 100)
        self.assertEqual(data["continuity_profile"][0]["h"], 0.5)


class TestHelpers(unittest.TestCase):

    def test_probe_vectors(self):
        """Test the basis and random probe vectors"""
        vectors = probe_vectors(3, random_count=4, seed=1)
        self.assertEqual(vectors.shape, (3, 7))
        np.testing.assert_allclose(np.linalg.norm(vectors, axis=0), np.ones(7))
        np.testing.assert_array_equal(vectors, probe_vectors(3, random_count=4, seed=1))

    def test_default_h_list(self):
        """Test the step list on continuous and grid times"""
        self.assertEqual(default_h_list(constant_identity(1)), [2.0 ** -p for p in range(1, 11)])
        self.assertEqual(default_h_list(embed_zero_infinite(4)), [0.5, 0.25])
        settings = load_settings(overrides={'verify': {'h_exponents': [1, 2, 3]}})
        self.assertEqual(default_h_list(constant_identity(1), settings), [0.5, 0.25, 0.125])

    def test_continuity_sweep(self):
        """Test the continuity profile of a translation"""
        profile = continuity_sweep(embed_zero_infinite(4), np.eye(4), [0.25])
        self.assertEqual(profile[0][0], 0.25)
        self.assertAlmostEqual(profile[0][1], np.sqrt(2.0))

    def test_estimate_generator(self):
        """Test the forward difference"""
        s = embed_diagonal([2.0])
        estimate = estimate_generator(s, 2.0 ** -20)
        self.assertAlmostEqual(estimate.data[0, 0].real, np.log(2.0), places=5)
        with self.assertRaises(InadmissibleTimeError):
            estimate_generator(s, 0.0)

    def test_generator_convergence(self):
        """Test first-order convergence of the forward difference"""
        s = embed_diagonal([2.0, 3.0])
        table = generator_convergence(s, [2.0 ** -p for p in range(4, 9)])
        self.assertIsNone(table[0][2])
        for _, residual, ratio in table[1:]:
            self.assertGreater(residual, 0.0)
            self.assertGreater(ratio, 1.9)
            self.assertLess(ratio, 2.1)
        with self.assertRaises(ValueError):
            generator_convergence(embed_zero_infinite(4), [0.25])


if __name__ == '__main__':
    unittest.main()
