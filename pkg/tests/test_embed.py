#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for classification and the embedding constructions
"""

import math
import unittest

import numpy as np
from numpy.testing import assert_allclose

from embedkit.core.cardinal import CardinalDim, INFINITE, ZERO
from embedkit.core.embed import (
    EmbeddabilityVerdict, EmbeddingMethod, OpenCase, VerdictStatus, classify, embed, embed_coisometry,
    embed_dense_invertible, embed_diagonal, embed_normal, embed_shift_translation, embed_unitary,
    embed_volterra, embed_zero_infinite, fractional_integration_matrix
)
from embedkit.core.errors import HypothesisError, NumericalError
from embedkit.core.operators import (
    BlockLeftShift, BlockRightShift, Compact, Dense, Diagonal, DirectSum, MatrixOperator, Multiplication,
    Volterra, Zero, jordan_block, materialize, random_unitary, volterra_matrix
)
from embedkit.core.settings import load_settings
from embedkit.core.verify import check_embedding


class TestClassify(unittest.TestCase):

    def test_nilpotent_jordan(self):
        """Test that a nilpotent Jordan block violates the necessary condition"""
        verdict = classify(Dense(jordan_block(4, 0.0)))
        self.assertEqual(verdict.status, VerdictStatus.NOT_EMBEDDABLE)
        self.assertEqual(verdict.kernel_dim, CardinalDim(1))
        self.assertEqual(verdict.cokernel_dim, CardinalDim(1))
        self.assertIn("kernel Finite(1)", verdict.reason)

    def test_invertible_dense(self):
        """Test that invertible matrices embed through the logarithm"""
        verdict = classify(Dense(jordan_block(3, 2.0)))
        self.assertEqual(verdict.method, EmbeddingMethod.DUNFORD_LOG)
        self.assertEqual(classify(jordan_block(3, 2.0)).method, EmbeddingMethod.DUNFORD_LOG)

    def test_shifts(self):
        """Test shifts by the multiplicity of their fiber"""
        self.assertEqual(classify(BlockRightShift(CardinalDim(1), 1, 8)).status, VerdictStatus.NOT_EMBEDDABLE)
        self.assertEqual(classify(BlockRightShift(CardinalDim(2), 2, 8)).cokernel_dim, CardinalDim(2))
        self.assertEqual(classify(BlockRightShift(INFINITE, 4, 8)).method, EmbeddingMethod.SHIFT_TRANSLATION)
        self.assertEqual(classify(BlockLeftShift(INFINITE, 4, 8)).method, EmbeddingMethod.COISOMETRY_ADJOINT)
        self.assertEqual(classify(BlockLeftShift(CardinalDim(2), 2, 8)).kernel_dim, CardinalDim(2))

    def test_zero_operator(self):
        """Test the zero operator by the dimension of its space"""
        self.assertEqual(classify(Zero(CardinalDim(1), 1)).status, VerdictStatus.NOT_EMBEDDABLE)
        self.assertEqual(classify(Zero(INFINITE, 8)).method, EmbeddingMethod.NILPOTENT_SHIFT)

    def test_diagonal_kernels(self):
        """Test diagonal operators by the size of their kernel"""
        self.assertEqual(classify(Diagonal((0, 1))).status, VerdictStatus.NOT_EMBEDDABLE)
        verdict = classify(Diagonal((2, 0, 1j), kernel_dim=INFINITE))
        self.assertEqual(verdict.method, EmbeddingMethod.DIAGONAL_BRANCH)
        self.assertEqual(classify(Multiplication((0.5, 0.5j))).method, EmbeddingMethod.NORMAL_SPECTRAL)

    def test_volterra(self):
        """Test the Volterra operator"""
        self.assertEqual(classify(Volterra(32)).method, EmbeddingMethod.VOLTERRA_FRACTIONAL)

    def test_compact(self):
        """Test compact operators, including the open case"""
        verdict = classify(Compact(np.diag([1.0, 0.5, 0.25])))
        self.assertEqual(verdict.method, EmbeddingMethod.COMPACT_RIESZ)
        verdict = classify(Compact(np.diag([1.0, 0.5, 0.0]), kernel_dim=INFINITE))
        self.assertEqual(verdict.status, VerdictStatus.UNKNOWN)
        self.assertEqual(verdict.open_case, OpenCase.COMPACT_INFINITE_KERNEL)
        verdict = classify(Compact(np.diag([1.0, 0.5]), dense_range=False))
        self.assertEqual(verdict.open_case, OpenCase.UNCLASSIFIED_STRUCTURE)

    def test_direct_sums(self):
        """Test direct sums of unitaries and shifts"""
        unitary = Dense(random_unitary(3, seed=2))
        self.assertEqual(classify(DirectSum((unitary, BlockRightShift(INFINITE, 2, 8)))).method,
                         EmbeddingMethod.ISOMETRY_WOLD)
        self.assertEqual(classify(DirectSum((unitary, BlockRightShift(CardinalDim(2), 2, 8)))).status,
                         VerdictStatus.NOT_EMBEDDABLE)
        self.assertEqual(classify(DirectSum((Dense(jordan_block(2, 1.0)), Zero(INFINITE, 4)))).method,
                         EmbeddingMethod.DIRECT_SUM)

    def test_verdict_invariants(self):
        """Test that NotEmbeddable always carries a finite nonzero cardinal"""
        with self.assertRaises(ValueError):
            EmbeddabilityVerdict.not_embeddable(ZERO, INFINITE)
        verdict = EmbeddabilityVerdict.not_embeddable(ZERO, CardinalDim(1))
        self.assertEqual(verdict.to_dict()["reason"]["necessary_condition_violated"]["cokernel_dim"], "Finite(1)")
        self.assertEqual(EmbeddabilityVerdict.embeddable(EmbeddingMethod.DIRECT_SUM).to_dict(),
                         {"status": "embeddable", "method": "direct_sum"})


class TestConstructions(unittest.TestCase):

    def test_dense_invertible(self):
        """Test the logarithm construction on a Jordan block"""
        m = jordan_block(3, 2.0)
        s = embed_dense_invertible(m)
        assert_allclose(s.evaluate(1).data, m.data, atol=1e-10)
        assert_allclose(s.evaluate(0).data, np.eye(3), atol=1e-14)
        self.assertLess(s.metadata["oracle_residual"], 1e-8)
        with self.assertRaises(HypothesisError):
            embed_dense_invertible(jordan_block(3, 0.0))

    def test_similar_jordan_block(self):
        """Test the logarithm construction on random similarity transforms of a Jordan block"""
        for seed in range(5):
            rng = np.random.default_rng(seed)
            basis = np.eye(3) + 0.5 * rng.standard_normal((3, 3))
            m = MatrixOperator(basis @ jordan_block(3, 2.0).data @ np.linalg.inv(basis))
            with self.subTest(seed=seed):
                s = embed_dense_invertible(m)
                self.assertEqual(s.metadata["circles"], 1)
                self.assertLessEqual(s.metadata["oracle_residual"], 1e-6)
                report = check_embedding(s, m)
                self.assertTrue(report.passed, report.failures)

    def test_oracle_disagreement(self):
        """Test that a contour logarithm off the Schur logarithm is an error"""
        settings = load_settings(overrides={'embed': {'oracle_tol': 1e-300}})
        with self.assertRaises(NumericalError):
            embed_dense_invertible(jordan_block(3, 2.0), settings)

    def test_negative_eigenvalue(self):
        """Test that a negative eigenvalue rotates the branch cut"""
        m = MatrixOperator(np.diag([-2.0, 3.0]))
        s = embed_dense_invertible(m)
        self.assertNotEqual(s.metadata["branch_angle"], math.pi)
        assert_allclose(s.evaluate(1).data, m.data, atol=1e-10)

    def test_diagonal(self):
        """Test the diagonal construction and its branches"""
        s = embed_diagonal([2.0, 3.0])
        assert_allclose(s.generator.data, np.diag([math.log(2.0), math.log(3.0)]))
        assert_allclose(s.evaluate(1).data, np.diag([2.0, 3.0]), atol=1e-14)
        assert_allclose(embed_diagonal([-1.0]).evaluate(0.5).data, [[1j]], atol=1e-15)

        s = embed_diagonal([1.0, 1.0], branch_offsets=[0, 1])
        assert_allclose(s.evaluate(0.5).data, np.diag([1.0, -1.0]), atol=1e-15)
        assert_allclose(s.evaluate(1).data, np.eye(2), atol=1e-14)
        with self.assertRaises(ValueError):
            embed_diagonal([1.0, 1.0], branch_offsets=[0])
        with self.assertRaises(HypothesisError):
            embed_diagonal([1.0, 0.0])

    def test_unitary(self):
        """Test the unitary spectral group"""
        s = embed_unitary(MatrixOperator(np.array([[-1.0]])))
        assert_allclose(s.generator.data, [[1j * math.pi]], atol=1e-15)
        u = random_unitary(4, seed=9)
        s = embed_unitary(u)
        assert_allclose(s.evaluate(1).data, u.data, atol=1e-12)
        half = s.evaluate(0.5).data
        assert_allclose(half.conj().T @ half, np.eye(4), atol=1e-12)
        with self.assertRaises(HypothesisError):
            embed_unitary(MatrixOperator(np.diag([1.0, 2.0])))

    def test_normal(self):
        """Test the multiplication construction"""
        s = embed_normal([1j])
        assert_allclose(s.evaluate(2).data, [[-1.0]], atol=1e-15)
        s = embed_normal([0.5, 0.5j], sample_weights=[0.25, 0.75])
        self.assertTrue(s.metadata["contractive"])
        self.assertEqual(s.metadata["sample_weights"], [0.25, 0.75])
        with self.assertRaises(HypothesisError):
            embed_normal([0.0, 1.0])

    def test_shift_translation(self):
        """Test that translation by one block is the shift"""
        s = embed_shift_translation(4, 6)
        op = BlockRightShift(INFINITE, 4, 6)
        np.testing.assert_array_equal(s.evaluate(1).data, materialize(op).data)
        np.testing.assert_array_equal(s.evaluate(0.25).data, np.eye(24, k=-1))
        coarse = embed_shift_translation(4, 6, grid_per_block=2)
        np.testing.assert_array_equal(coarse.evaluate(0.5).data, np.eye(24, k=-2))
        with self.assertRaises(ValueError):
            embed_shift_translation(4, 6, grid_per_block=3)

    def test_coisometry(self):
        """Test the adjoint construction for the left shift"""
        op = BlockLeftShift(INFINITE, 2, 6)
        s = embed_coisometry(op)
        self.assertEqual(s.method, EmbeddingMethod.COISOMETRY_ADJOINT)
        np.testing.assert_array_equal(s.evaluate(1).data, materialize(op).data)

    def test_zero_infinite(self):
        """Test the nilpotent translation reaches zero at time one"""
        s = embed_zero_infinite(8)
        np.testing.assert_array_equal(s.evaluate(1).data, np.zeros((8, 8)))
        np.testing.assert_array_equal(s.evaluate(0.5).data, np.eye(8, k=-4))

    def test_fractional_integration(self):
        """Test the fractional integration matrix"""
        assert_allclose(fractional_integration_matrix(10, 1.0), volterra_matrix(10), atol=1e-15)
        assert_allclose(fractional_integration_matrix(10, 0.0), np.eye(10), atol=1e-15)
        half = fractional_integration_matrix(64, 0.5)
        assert_allclose(half @ half, volterra_matrix(64), atol=1e-13)
        assert_allclose(fractional_integration_matrix(64, 0.3) @ fractional_integration_matrix(64, 0.45),
                        fractional_integration_matrix(64, 0.75), atol=1e-13)
        with self.assertRaises(ValueError):
            fractional_integration_matrix(10, -0.5)

    def test_fractional_integration_of_constants(self):
        """Test the half integral of f = 1 against τ^(1/2)/Γ(3/2) as the grid is refined"""
        errors = []
        for grid_size in (64, 128, 256):
            midpoints = (np.arange(grid_size) + 0.5) / grid_size
            away = midpoints >= 0.25
            values = fractional_integration_matrix(grid_size, 0.5) @ np.ones(grid_size)
            errors.append(np.max(np.abs(values[away] - midpoints[away] ** 0.5 / math.gamma(1.5))))
        for coarse, fine in zip(errors, errors[1:]):
            self.assertLess(fine, coarse)
        self.assertLessEqual(errors[-1], 1e-3)

    def test_volterra(self):
        """Test the Volterra realization at integer times"""
        s = embed_volterra(16)
        np.testing.assert_array_equal(s.evaluate(1).data, volterra_matrix(16))
        np.testing.assert_array_equal(s.evaluate(0).data, np.eye(16))
        assert_allclose(s.evaluate(2).data, volterra_matrix(16) @ volterra_matrix(16), atol=1e-15)
        with self.assertRaises(HypothesisError):
            embed_volterra(8)

    def test_volterra_cocycle(self):
        """Test that the Volterra realization composes to rounding on two grids"""
        for grid_size in (128, 256):
            with self.subTest(grid_size=grid_size):
                s = embed_volterra(grid_size)
                report = check_embedding(s, materialize(Volterra(grid_size)))
                self.assertTrue(report.passed, report.failures)
                self.assertLessEqual(report.cocycle_residual_max, 1e-10)
                self.assertEqual(report.endpoint_residual, 0.0)


class TestEmbed(unittest.TestCase):

    def test_not_embeddable_has_no_realization(self):
        """Test that only Embeddable verdicts come with a realization"""
        verdict, realization = embed(Dense(jordan_block(4, 0.0)))
        self.assertEqual(verdict.status, VerdictStatus.NOT_EMBEDDABLE)
        self.assertIsNone(realization)
        verdict, realization = embed(Compact(np.diag([1.0, 0.0]), kernel_dim=INFINITE))
        self.assertEqual(verdict.status, VerdictStatus.UNKNOWN)
        self.assertIsNone(realization)

    def test_diagonal_with_infinite_kernel(self):
        """Test that the kernel is split off and translated"""
        op = Diagonal((2, 0, 0, 0, 0, 1j), kernel_dim=INFINITE)
        verdict, s = embed(op)
        self.assertEqual(verdict.method, EmbeddingMethod.DIAGONAL_BRANCH)
        self.assertTrue(s.times.is_grid)
        assert_allclose(s.evaluate(1).data, materialize(op).data, atol=1e-14)

    def test_branch_offsets_from_settings(self):
        """Test per-eigenvalue and rescaling branch offsets"""
        op = Diagonal((1j, -1.0))
        settings = load_settings(overrides={'embed': {'branch_offsets': [1, -1]}})
        _, s = embed(op, settings)
        self.assertEqual(s.branch_offsets, (1, -1))
        assert_allclose(s.evaluate(1).data, materialize(op).data, atol=1e-13)

        u = Dense(random_unitary(3, seed=4))
        settings = load_settings(overrides={'embed': {'branch_offsets': [2]}})
        _, s = embed(u, settings)
        self.assertEqual(s.metadata["rescale_offset"], 2)
        assert_allclose(s.evaluate(1).data, u.matrix.data, atol=1e-10)

        settings = load_settings(overrides={'embed': {'branch_offsets': [1, 2]}})
        with self.assertRaises(ValueError):
            embed(u, settings)

    def test_unitary_plus_shift(self):
        """Test the Wold construction reproduces the operator"""
        op = DirectSum((Dense(random_unitary(3, seed=1)), BlockRightShift(INFINITE, 2, 8)))
        verdict, s = embed(op)
        self.assertEqual(verdict.method, EmbeddingMethod.ISOMETRY_WOLD)
        self.assertEqual(s.metadata["unitary_dim"], 3)
        assert_allclose(s.evaluate(1).data, materialize(op).data, atol=1e-10)

    def test_unitary_plus_short_shift(self):
        """Test the Wold construction when the shift has fewer blocks than the default depth"""
        op = DirectSum((Dense(random_unitary(4, seed=2)), BlockRightShift(INFINITE, 2, 4)))
        verdict, s = embed(op)
        self.assertEqual(verdict.method, EmbeddingMethod.ISOMETRY_WOLD)
        self.assertEqual(s.metadata["depth"], 4)
        assert_allclose(s.evaluate(1).data, materialize(op).data, atol=1e-10)
        self.assertTrue(check_embedding(s, materialize(op)).passed)

    def test_direct_sum(self):
        """Test embedding a sum part by part"""
        op = DirectSum((Dense(jordan_block(2, 1.0)), Zero(INFINITE, 4)))
        verdict, s = embed(op)
        self.assertEqual(verdict.method, EmbeddingMethod.DIRECT_SUM)
        self.assertEqual(s.times.cells_per_unit, 4)
        assert_allclose(s.evaluate(1).data, materialize(op).data, atol=1e-10)


if __name__ == '__main__':
    unittest.main()
