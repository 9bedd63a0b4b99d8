#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for semigroup realizations and their algebra
"""

import unittest
from fractions import Fraction

import numpy as np
from numpy.testing import assert_allclose

from embedkit.core.embed import embed_diagonal, embed_shift_translation, embed_volterra, embed_zero_infinite
from embedkit.core.errors import HypothesisError, InadmissibleTimeError
from embedkit.core.semigroup import (
    AdmissibleTimes, adjoint_realization, constant_identity, direct_sum, permuted, rescale, root, scale,
    similar
)


class TestAdmissibleTimes(unittest.TestCase):

    def test_grid_steps(self):
        """Test lattice step counting"""
        times = AdmissibleTimes.grid(4)
        self.assertTrue(times.is_grid)
        self.assertEqual(times.step, 0.25)
        self.assertEqual(times.steps(Fraction(3, 4)), 3)
        self.assertEqual(times.steps(0.5), 2)
        with self.assertRaises(InadmissibleTimeError):
            times.steps(0.3)

    def test_snap(self):
        """Test snapping to the nearest lattice point"""
        self.assertEqual(AdmissibleTimes.grid(4).snap(0.3), Fraction(1, 4))
        self.assertEqual(AdmissibleTimes.continuous().snap(0.3), 0.3)
        self.assertEqual(AdmissibleTimes.continuous().describe(), "Continuous")
        self.assertEqual(AdmissibleTimes.grid(8).describe(), "Grid(1/8)")

    def test_invalid_grid(self):
        """Test that a grid needs positive cells"""
        with self.assertRaises(ValueError):
            AdmissibleTimes.grid(0)


class TestRealization(unittest.TestCase):

    def test_negative_time(self):
        """Test that semigroups refuse negative times and groups accept them"""
        with self.assertRaises(InadmissibleTimeError):
            embed_volterra(16).evaluate(-0.5)
        assert_allclose(embed_diagonal([2.0, 3.0]).evaluate(-1).data, np.diag([0.5, 1 / 3]))

    def test_non_finite_time(self):
        """Test that NaN and infinite times are refused"""
        with self.assertRaises(InadmissibleTimeError):
            constant_identity(2).evaluate(float('nan'))
        with self.assertRaises(InadmissibleTimeError):
            constant_identity(2).evaluate(float('inf'))

    def test_grid_evaluation(self):
        """Test the nilpotent translation on its lattice"""
        s = embed_zero_infinite(4)
        assert_allclose(s.evaluate(0.5).data, np.eye(4, k=-2))
        with self.assertRaises(InadmissibleTimeError):
            s.evaluate(0.3)

    def test_describe(self):
        """Test the report description of a realization"""
        info = embed_zero_infinite(4).describe()
        self.assertEqual(info["method"], "nilpotent_shift")
        self.assertEqual(info["admissible_times"], "Grid(1/4)")
        self.assertEqual(info["grid_step"], 0.25)
        self.assertFalse(info["has_generator"])


class TestAlgebra(unittest.TestCase):

    def test_rescale_identity(self):
        """Test that rescaling the identity semigroup by one turn gives -I at 1/2"""
        s = rescale(constant_identity(2), 1)
        assert_allclose(s.evaluate(0.5).data, -np.eye(2), atol=1e-15)
        np.testing.assert_array_equal(s.evaluate(1).data, np.eye(2))
        assert_allclose(s.generator.data, 2j * np.pi * np.eye(2))

    def test_rescale_keeps_endpoint(self):
        """Test that rescaling never changes T(1)"""
        base = embed_diagonal([2.0, 1j])
        for n in (-3, 1, 5):
            assert_allclose(rescale(base, n).evaluate(1).data, base.evaluate(1).data, atol=1e-14)
        self.assertEqual(rescale(base, 2).branch_offsets, (2, 2))
        self.assertIs(rescale(base, 0), base)

    def test_rescale_on_grid(self):
        """Test rescaling a grid realization"""
        s = rescale(embed_zero_infinite(4), 1)
        assert_allclose(s.evaluate(0.25).data, 1j * np.eye(4, k=-1), atol=1e-15)

    def test_scale(self):
        """Test that scaling by c multiplies T(1) by c"""
        base = embed_diagonal([2.0, 3.0])
        assert_allclose(scale(base, -2.0).evaluate(1).data, np.diag([-4.0, -6.0]), atol=1e-12)
        with self.assertRaises(HypothesisError):
            scale(base, 0)

    def test_adjoint(self):
        """Test the adjoint semigroup"""
        s = adjoint_realization(embed_diagonal([1j, 2.0]))
        assert_allclose(s.evaluate(1).data, np.diag([-1j, 2.0]), atol=1e-14)

    def test_direct_sum_lattice(self):
        """Test that a direct sum lives on the coarsest common lattice"""
        summed = direct_sum([embed_zero_infinite(4), embed_zero_infinite(6)])
        self.assertEqual(summed.times.cells_per_unit, 2)
        assert_allclose(summed.evaluate(0.5).data[:4, :4], np.eye(4, k=-2))
        assert_allclose(summed.evaluate(0.5).data[4:, 4:], np.eye(6, k=-3))

        mixed = direct_sum([embed_diagonal([2.0]), embed_shift_translation(2, 3)])
        self.assertEqual(mixed.times.cells_per_unit, 2)
        self.assertIsNone(mixed.generator)
        assert_allclose(mixed.evaluate(0.5).data[0, 0], np.sqrt(2.0))

        continuous = direct_sum([embed_diagonal([2.0]), embed_diagonal([3.0])])
        self.assertFalse(continuous.times.is_grid)
        assert_allclose(continuous.generator.data, np.diag(np.log([2.0, 3.0])))
        with self.assertRaises(ValueError):
            direct_sum([])

    def test_permuted(self):
        """Test moving coordinates of a realization"""
        s = permuted(embed_diagonal([2.0, 3.0], branch_offsets=[0, 1]), [1, 0])
        assert_allclose(s.evaluate(1).data, np.diag([3.0, 2.0]), atol=1e-13)
        self.assertEqual(s.branch_offsets, (1, 0))
        with self.assertRaises(ValueError):
            permuted(s, [0, 0])

    def test_similar_and_root(self):
        """Test similarity transforms and roots"""
        basis = np.array([[1.0, 1.0], [0.0, 1.0]])
        s = similar(embed_diagonal([4.0, 9.0]), basis)
        target = basis @ np.diag([4.0, 9.0]) @ np.linalg.inv(basis)
        assert_allclose(s.evaluate(1).data, target, atol=1e-12)
        half = root(s, 2).data
        assert_allclose(half @ half, target, atol=1e-12)
        with self.assertRaises(ValueError):
            root(s, 0)


if __name__ == '__main__':
    unittest.main()
