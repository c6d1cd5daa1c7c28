import unittest

import numpy as np

from BSSit.examples import run_flops_tradeoff
from BSSit.examples import run_hyperparameter_recovery
from BSSit.examples import run_injection_benchmark
from BSSit.examples import run_lowrank_accuracy
from BSSit.examples import run_weak_source_separation


class TestExamples(unittest.TestCase):

    def setUp(self):
        self.verbose = -1
        self.relative_precision = 1e-3

    def test_flops_tradeoff(self):

        rows, reduction = run_flops_tradeoff(verbose=self.verbose)
        self.assertEqual(len(rows), 12)
        self.assertAlmostEqual(reduction, 0.9043, delta=self.relative_precision)

    def test_flops_tradeoff_small_projection_gains_more(self):

        rows, _ = run_flops_tradeoff(sources=(10,), reduced_rows=(100, 1000), verbose=self.verbose)
        self.assertGreater(rows[0]["reduction"], rows[1]["reduction"])

    def test_hyperparameter_recovery(self):

        estimated_scales, true_scales = run_hyperparameter_recovery(verbose=self.verbose)
        self.assertEqual(estimated_scales.shape, (3,))
        np.testing.assert_allclose(estimated_scales, true_scales, rtol=0.1)

    def test_weak_source_separation(self):

        per_source, shared = run_weak_source_separation(verbose=self.verbose)
        self.assertGreater(per_source, 0.95)
        self.assertLess(shared, per_source)

    def test_injection_benchmark(self):

        scores = run_injection_benchmark(M=100, N=100, target_variances=(1e-2,), n_runs=1, verbose=self.verbose)
        self.assertEqual(list(scores), [1e-2])
        self.assertGreater(scores[1e-2], 0.8)

    def test_lowrank_accuracy(self):

        errors = run_lowrank_accuracy(M=60, N=20, n_sources=2, reduced_rows=(2, 20), max_em_iters=30,
                                      max_bcd_iters=10, verbose=self.verbose)
        self.assertEqual(len(errors), 2)
        self.assertTrue(all(error >= 0 for error in errors))
        self.assertLess(errors[-1], 0.1)
