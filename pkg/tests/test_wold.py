#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for the Wold decomposition of truncated isometries
"""

import dataclasses
import unittest

import numpy as np

from embedkit.core.cardinal import CardinalDim, INFINITE, ZERO
from embedkit.core.errors import HypothesisError
from embedkit.core.operators import BlockRightShift, Dense, DirectSum, jordan_block, materialize, random_unitary
from embedkit.core.wold import interior_isometry_defect, orbit_depth, orthonormality, wold_decompose, wold_verify


class TestWoldDecompose(unittest.TestCase):

    def test_pure_shift(self):
        """Test a block shift of infinite multiplicity has no unitary part"""
        op = BlockRightShift(INFINITE, 2, 16)
        w = wold_decompose(op, depth=8)
        self.assertEqual(w.unitary_dim, 0)
        self.assertEqual(w.wandering_dim, 2)
        self.assertEqual(w.multiplicity, INFINITE)
        self.assertEqual(w.depth_used, 8)
        self.assertEqual(w.shift_basis.shape, (32, 16))
        self.assertEqual(w.tail_basis.shape, (32, 16))
        self.assertLessEqual(max(w.residuals), 1e-8)
        self.assertLessEqual(wold_verify(op, w).max_residual, 1e-8)

    def test_finite_multiplicity(self):
        """Test the multiplicity of a shift with a finite fiber"""
        w = wold_decompose(BlockRightShift(CardinalDim(3), 3, 16), depth=8)
        self.assertEqual(w.multiplicity, CardinalDim(3))
        self.assertEqual(w.wandering_dim, 3)

    def test_unitary_input(self):
        """Test that a unitary has an empty wandering subspace"""
        op = Dense(random_unitary(5, seed=3))
        w = wold_decompose(op, depth=4)
        self.assertEqual(w.wandering_dim, 0)
        self.assertEqual(w.unitary_dim, 5)
        self.assertEqual(w.multiplicity, ZERO)
        residuals = wold_verify(op, w)
        self.assertLessEqual(residuals.unitarity_left, 1e-10)
        self.assertLessEqual(residuals.unitarity_right, 1e-10)

    def test_unitary_plus_shift(self):
        """Test the split of a unitary summed with a shift"""
        op = DirectSum((Dense(random_unitary(3, seed=1)), BlockRightShift(INFINITE, 2, 12)))
        w = wold_decompose(op, depth=4)
        self.assertEqual(w.unitary_dim, 3)
        self.assertEqual(w.wandering_dim, 2)
        self.assertEqual(w.multiplicity, INFINITE)
        residuals = wold_verify(op, w)
        self.assertLessEqual(residuals.max_residual, 1e-8)
        self.assertLessEqual(orthonormality(w.unitary_basis), 1e-10)

    def test_corrupted_basis(self):
        """Test that a perturbed wandering basis is detected"""
        op = BlockRightShift(INFINITE, 2, 16)
        w = wold_decompose(op, depth=8)
        arr = materialize(op).data
        corrupted = w.wandering_basis + 1e-2 * (arr @ w.wandering_basis)
        residuals = wold_verify(op, dataclasses.replace(w, wandering_basis=corrupted))
        self.assertGreaterEqual(residuals.orthogonality, 1e-3)
        self.assertGreaterEqual(residuals.max_residual, 1e-3)

    def test_not_an_isometry(self):
        """Test that a non-isometry is rejected"""
        with self.assertRaises(HypothesisError):
            wold_decompose(Dense(jordan_block(3, 2.0)))

    def test_depth_too_large(self):
        """Test that the orbit may not reach the boundary before the requested depth"""
        with self.assertRaises(HypothesisError):
            wold_decompose(BlockRightShift(INFINITE, 2, 4), depth=8)
        with self.assertRaises(ValueError):
            wold_decompose(BlockRightShift(INFINITE, 2, 4), depth=0)

    def test_orbit_depth(self):
        """Test that the depth is capped at the shortest block shift"""
        short = DirectSum((Dense(random_unitary(4, seed=2)), BlockRightShift(INFINITE, 2, 4)))
        self.assertEqual(orbit_depth(short, 8), 4)
        self.assertEqual(wold_decompose(short, orbit_depth(short, 8)).wandering_dim, 2)
        self.assertEqual(orbit_depth(BlockRightShift(INFINITE, 2, 16), 8), 8)
        self.assertEqual(orbit_depth(Dense(random_unitary(3, seed=1)), 8), 8)

    def test_interior_isometry_defect(self):
        """Test the isometry check ignores the boundary block"""
        self.assertLessEqual(interior_isometry_defect(BlockRightShift(INFINITE, 2, 6)), 1e-14)
        self.assertGreater(interior_isometry_defect(Dense(np.diag([1.0, 2.0]))), 1.0)


if __name__ == '__main__':
    unittest.main()
