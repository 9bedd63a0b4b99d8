#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Acceptance runs: the built-in demo corpus and property checks over random inputs
"""

import contextlib
import csv
import io
import math
import os
import shutil
import tempfile
import unittest
from fractions import Fraction

import numpy as np
import pytest
import yaml
from numpy.testing import assert_allclose

from embedkit.api.corpus import demo_corpus
from embedkit.cli import EXIT_OK, JobConfig, run
from embedkit.core.cardinal import CardinalDim, INFINITE
from embedkit.core.embed import (
    EmbeddingMethod, VerdictStatus, classify, embed_dense_invertible, embed_diagonal, embed_normal,
    embed_shift_translation, embed_unitary, embed_volterra
)
from embedkit.core.operators import (
    BlockRightShift, Dense, DirectSum, MatrixOperator, jordan_block, materialize, random_dense, random_unitary
)
from embedkit.core.semigroup import rescale
from embedkit.core.wold import wold_decompose


@pytest.mark.integration
@pytest.mark.slow
class TestDemoCorpus(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        """Run the corpus once for all tests"""
        cls.temp_dir = tempfile.mkdtemp()
        with contextlib.redirect_stdout(io.StringIO()):
            cls.status = run(JobConfig(command='demo', output_dir=cls.temp_dir))
        with open(os.path.join(cls.temp_dir, 'demo_summary.csv'), encoding='utf-8', newline='') as f:
            cls.rows = list(csv.DictReader(f))

    @classmethod
    def tearDownClass(cls):
        """Clean up test fixtures"""
        shutil.rmtree(cls.temp_dir)

    def test_exit_status(self):
        """Test that every case meets its expectation"""
        self.assertEqual(self.status, EXIT_OK)

    def test_summary_rows(self):
        """Test the summary table against the expected statuses"""
        cases = demo_corpus()
        self.assertEqual(len(self.rows), len(cases))
        self.assertEqual(len(self.rows), 24)
        for case, row in zip(cases, self.rows):
            with self.subTest(case=case.name):
                self.assertEqual(row["name"], case.name)
                self.assertEqual(row["status"], case.expected_status)
                if row["status"] == "embeddable":
                    self.assertEqual(row["pass"], "true")
                else:
                    self.assertEqual(row["pass"], "")
                    self.assertEqual(row["realization"], "")

    def test_methods_covered(self):
        """Test that the corpus exercises every classification method"""
        methods = {row["method"] for row in self.rows if row["method"]}
        expected = {m.value for m in EmbeddingMethod} - {EmbeddingMethod.UNITARY_SPECTRAL.value}
        self.assertEqual(methods, expected)

    def test_negative_controls(self):
        """Test the reasons given for the negative controls"""
        with open(os.path.join(self.temp_dir, 'demo', 'jordan-nilpotent.report.yaml'), encoding='utf-8') as f:
            body = next(yaml.safe_load_all(f))
        violated = body["verdict"]["reason"]["necessary_condition_violated"]
        self.assertEqual(violated["kernel_dim"], "Finite(1)")
        row = next(r for r in self.rows if r["name"] == "compact-infinite-kernel")
        self.assertEqual(row["status"], "unknown")

    def test_residuals(self):
        """Test the endpoint residuals of exact and spectral constructions"""
        by_name = {row["name"]: row for row in self.rows}
        self.assertLessEqual(float(by_name["zero-infinite"]["endpoint_residual"]), 1e-12)
        self.assertLessEqual(float(by_name["shift-infinite"]["endpoint_residual"]), 1e-12)
        self.assertLessEqual(float(by_name["random-dense"]["endpoint_residual"]), 1e-6)
        self.assertLessEqual(float(by_name["annulus-diagonal-rescaled"]["endpoint_residual"]), 1e-6)
        self.assertLessEqual(float(by_name["compact-clusters"]["endpoint_residual"]), 1e-5)

@pytest.mark.integration
class TestEmbeddingProperties(unittest.TestCase):

    def test_finite_dimensional_dichotomy(self):
        """Test that dense matrices are embeddable exactly when invertible"""
        for seed in range(200):
            dim = 2 + seed % 11
            rank = dim if seed % 3 else max(0, dim - 1 - seed % 2)
            with self.subTest(seed=seed, dim=dim, rank=rank):
                verdict = classify(Dense(random_dense(dim, rank=rank, seed=seed)))
                expected = VerdictStatus.EMBEDDABLE if rank == dim else VerdictStatus.NOT_EMBEDDABLE
                self.assertEqual(verdict.status, expected)

    def test_log_exp_round_trip(self):
        """Test exp(log m) = m and agreement with the Schur logarithm"""
        rng = np.random.default_rng(2024)
        for case in range(50):
            dim = 2 + case % 7
            values = []
            while len(values) < dim:
                z = rng.uniform(0.3, 3.0) * np.exp(1j * rng.uniform(-2.8, 2.8))
                if abs(z.imag) < 0.1 and z.real < 0:
                    continue
                if all(abs(z - w) >= 0.1 for w in values):
                    values.append(z)
            basis = np.eye(dim) + 0.3 * rng.standard_normal((dim, dim)) / np.sqrt(dim)
            m = MatrixOperator(basis @ np.diag(values) @ np.linalg.inv(basis))
            with self.subTest(case=case):
                s = embed_dense_invertible(m)
                self.assertLessEqual(np.linalg.norm(s.evaluate(1).data - m.data), 1e-6)
                self.assertLessEqual(s.metadata["oracle_residual"], 1e-6)

    def test_isometry_corpus(self):
        """Test the unitary-or-infinite-cokernel rule and the recovered multiplicities"""
        cases = [
            (Dense(random_unitary(6, seed=1)), True, CardinalDim(0)),
            (BlockRightShift(CardinalDim(1), 1, 64), False, CardinalDim(1)),
            (BlockRightShift(CardinalDim(2), 2, 64), False, CardinalDim(2)),
            (BlockRightShift(CardinalDim(3), 3, 64), False, CardinalDim(3)),
            (BlockRightShift(INFINITE, 2, 64), True, INFINITE),
            (DirectSum((Dense(random_unitary(4, seed=2)), BlockRightShift(INFINITE, 2, 64))), True, INFINITE),
            (DirectSum((Dense(random_unitary(4, seed=2)), BlockRightShift(CardinalDim(2), 2, 64))), False,
             CardinalDim(2)),
        ]
        for op, embeddable, multiplicity in cases:
            with self.subTest(op=op.kind, size=op.size()):
                self.assertEqual(classify(op).is_embeddable, embeddable)
                w = wold_decompose(op, depth=8)
                self.assertEqual(w.multiplicity, multiplicity)
                self.assertLessEqual(w.residuals[0], 1e-8)

    def test_shift_translation_is_exact(self):
        """Test that grid roots of the shift compose exactly"""
        for cells in (1, 2, 4):
            with self.subTest(cells=cells):
                s = embed_shift_translation(4, 16, grid_per_block=cells)
                step = s.evaluate(Fraction(1, cells)).data
                np.testing.assert_array_equal(np.linalg.matrix_power(step, cells), s.evaluate(1).data)
                np.testing.assert_array_equal(s.evaluate(1).data,
                                              materialize(BlockRightShift(INFINITE, 4, 16)).data)

    def test_volterra_half_power(self):
        """Test the Volterra half power against the Volterra operator"""
        for grid_size in (200, 400):
            s = embed_volterra(grid_size)
            half = s.evaluate(0.5).data
            self.assertLessEqual(np.linalg.norm(half @ half - s.evaluate(1).data, 2), 1e-11)

        midpoints = (np.arange(200) + 0.5) / 200
        away = midpoints >= 0.1
        s = embed_volterra(200)
        for t in (0.25, 0.5, 0.75):
            with self.subTest(t=t):
                values = s.evaluate(t).data @ np.ones(200)
                assert_allclose(values[away], midpoints[away] ** t / math.gamma(t + 1), atol=5e-3)

    def test_rescaling_non_uniqueness(self):
        """Test that rescaled realizations agree at 1 and differ at 1/2"""
        realizations = [
            embed_dense_invertible(jordan_block(3, 2.0)),
            embed_diagonal([2.0, 0.5j, -1.0]),
            embed_unitary(random_unitary(4, seed=1)),
            embed_normal([0.9, 0.5j], [1.0, 2.0]),
            embed_volterra(32),
            embed_shift_translation(4, 6),
        ]
        offsets = range(-2, 3)
        for s in realizations:
            with self.subTest(method=s.method):
                end = s.evaluate(1).data
                halves = {}
                for n in offsets:
                    rescaled = rescale(s, n)
                    self.assertLessEqual(np.linalg.norm(rescaled.evaluate(1).data - end), 1e-12)
                    halves[n] = rescaled.evaluate(0.5).data
                spread = max(np.linalg.norm(halves[n] - halves[k]) for n in offsets for k in offsets if n != k)
                self.assertGreaterEqual(spread, 0.1)

if __name__ == '__main__':
    unittest.main()
