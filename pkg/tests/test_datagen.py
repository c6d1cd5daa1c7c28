import os
import tempfile
import unittest

import numpy as np

from BSSit import DataMatrix, Source
from BSSit.datagen import GroundTruth, SyntheticSpec, correlation_table, generate_synthetic, inject_ground_truth, \
    match_sources, model_score, pearson
from BSSit.datagen.score import lower_median
from BSSit.priors import HalfNormal, Laplace, Normal
from BSSit.tools.exceptions import ShapeError


class TestSynthetic(unittest.TestCase):

    def setUp(self):
        self.spec = SyntheticSpec(M=30, N=20, sources=[(Normal(), 1.), (Laplace(), 4.)], noise_sigma=0.1, seed=3)

    def test_shapes_and_filters(self):

        x, truth = generate_synthetic(self.spec)
        self.assertEqual(x.shape, (30, 20))
        self.assertEqual(len(truth.true_sources), 2)
        for source in truth.true_sources:
            self.assertAlmostEqual(np.linalg.norm(source.spatial), 1., delta=1e-12)
            self.assertTrue(np.all(source.temporal >= 0))
        self.assertEqual(truth.noise_sigma, 0.1)
        self.assertIsNone(truth.target_variance)

    def test_reproducible(self):

        first, _ = generate_synthetic(self.spec)
        second, _ = generate_synthetic(SyntheticSpec.from_dict(self.spec.to_dict()))
        third, _ = generate_synthetic(SyntheticSpec(M=30, N=20, sources=[(Normal(), 1.), (Laplace(), 4.)], seed=4))
        self.assertEqual(first, second)
        self.assertNotEqual(first, third)

    def test_noiseless_sum(self):

        x, truth = generate_synthetic(SyntheticSpec(M=10, N=8, noise_sigma=0., seed=1))
        self.assertEqual(len(truth.true_sources), 3)
        np.testing.assert_array_equal(x.values, truth.signal())
        self.assertEqual(truth.as_data_matrix(), x)

    def test_half_normal_dense_filters(self):

        x, truth = generate_synthetic(SyntheticSpec(M=30, N=20, sources=[(HalfNormal(), 1.), (HalfNormal(), 2.)],
                                                    noise_sigma=0., seed=5))
        for source in truth.true_sources:
            self.assertTrue(np.all(source.spatial >= 0))
            self.assertAlmostEqual(np.linalg.norm(source.spatial), 1., delta=1e-12)
        self.assertTrue(np.all(x.values >= 0))

    def test_sparse_scales(self):

        _, truth = generate_synthetic(SyntheticSpec(M=5, N=20000, sources=[(Normal(), 0.5), (Normal(), 3.)]))
        self.assertAlmostEqual(np.mean(truth.true_sources[0].temporal), 0.5, delta=0.03)
        self.assertAlmostEqual(np.mean(truth.true_sources[1].temporal), 3., delta=0.15)

    def test_from_dict_scales(self):

        spec = SyntheticSpec.from_dict({"M": 4, "N": 3, "sources": [1., {"dense": "Laplace", "beta": 2.}]})
        self.assertEqual([(dense.family, beta) for dense, beta in spec.sources], [("Normal", 1.), ("Laplace", 2.)])

    def test_invalid(self):

        with self.assertRaises(ValueError):
            SyntheticSpec(M=0)
        with self.assertRaises(ValueError):
            SyntheticSpec(sources=[(Normal(), 0.)])
        with self.assertRaises(ValueError):
            SyntheticSpec(sources=[])
        with self.assertRaises(ValueError):
            SyntheticSpec(noise_sigma=-1.)


class TestInjection(unittest.TestCase):

    def setUp(self):
        rng = np.random.default_rng(0)
        self.background = DataMatrix(rng.standard_normal((15, 10)))
        self.cells = [Source(k, rng.standard_normal(15), np.abs(rng.standard_normal(10))) for k in range(2)]

    def test_target_variance(self):

        x, truth = inject_ground_truth(self.background, self.cells, 1e-2)
        for cell in truth.true_sources:
            self.assertAlmostEqual(np.var(cell.matrix()), 1e-2, delta=1e-14)
        np.testing.assert_allclose(x.values - self.background.values, truth.signal(), atol=1e-12)
        self.assertEqual(truth.target_variance, 1e-2)
        self.assertEqual(truth.noise_sigma, 0.)
        self.assertIs(truth.background, self.background)
        for c, cell, injected in zip(truth.scales, self.cells, truth.true_sources):
            np.testing.assert_allclose(injected.spatial, c * cell.spatial)

    def test_zero_target(self):

        x, truth = inject_ground_truth(self.background, self.cells, 0.)
        self.assertEqual(x, self.background)
        self.assertEqual(truth.scales, [0., 0.])

    def test_errors(self):

        with self.assertRaises(ShapeError):
            inject_ground_truth(self.background, [Source(0, np.ones(14), np.ones(10))], 1.)
        with self.assertRaises(ValueError):
            inject_ground_truth(self.background, [Source(0, np.ones(15), np.ones(10))], 1.)
        with self.assertRaises(ValueError):
            inject_ground_truth(self.background, self.cells, -1.)


class TestScore(unittest.TestCase):

    def setUp(self):
        self.direction = np.array([1., -1., 0., 0.])
        self.orthogonal = np.array([0., 0., 1., -1.])
        self.truth = GroundTruth([Source(0, np.ones(3), self.direction)])

    def correlated(self, r):
        return Source(0, np.ones(3), r * self.direction + np.sqrt(1 - r ** 2) * self.orthogonal)

    def test_pearson(self):

        self.assertAlmostEqual(pearson([1., 2., 3.], [2., 4., 6.]), 1., delta=1e-12)
        self.assertAlmostEqual(pearson([1., 2., 3.], [3., 2., 1.]), -1., delta=1e-12)
        self.assertAlmostEqual(pearson(self.direction, self.correlated(0.3).temporal), 0.3, delta=1e-12)
        with self.assertRaises(ValueError):
            pearson([1., 2.], [1., 2., 3.])
        with self.assertRaises(ValueError):
            pearson([1.], [1.])
        with self.assertRaises(ValueError):
            pearson([1., 1., 1.], [1., 2., 3.])

    def test_lower_median(self):

        self.assertEqual(lower_median([0.2, 0.9, 0.5]), 0.5)
        self.assertEqual(lower_median([0.2, 0.9, 0.5, 0.7]), 0.5)
        self.assertEqual(lower_median([0.4]), 0.4)

    def test_median_over_runs(self):

        runs = [[self.correlated(r)] for r in (0.2, 0.9, 0.5)]
        self.assertAlmostEqual(model_score(self.truth, runs, target="temporal"), 0.5, delta=1e-12)
        table = correlation_table(self.truth, runs, target="temporal")
        self.assertEqual(table.shape, (1, 3))

    def test_identical_runs(self):

        _, truth = generate_synthetic(SyntheticSpec(M=12, N=9, noise_sigma=0.))
        runs = [truth.true_sources, list(reversed(truth.true_sources))]
        for target in ("source", "spatial", "temporal"):
            self.assertAlmostEqual(model_score(truth, runs, target=target), 1., delta=1e-12)

    def test_sign_and_dead_sources(self):

        flipped = Source(0, -np.ones(3), self.direction)
        dead = Source(1, np.zeros(3), np.zeros(4))
        self.assertAlmostEqual(model_score(self.truth, [[dead, flipped]], target="temporal"), 1., delta=1e-12)
        self.assertEqual(model_score(self.truth, [[dead]]), 0.)

    def test_match_sources(self):

        _, truth = generate_synthetic(SyntheticSpec(M=12, N=9, noise_sigma=0.))
        recovered = [truth.true_sources[2], truth.true_sources[0], truth.true_sources[1]]
        self.assertEqual(match_sources(truth, recovered), [1, 2, 0])

    def test_errors(self):

        with self.assertRaises(ValueError):
            model_score(self.truth, [])
        with self.assertRaises(ValueError):
            model_score(self.truth, [[]])
        with self.assertRaises(ValueError):
            model_score(GroundTruth([]), [[self.correlated(0.5)]])
        with self.assertRaises(ValueError):
            model_score(self.truth, [[self.correlated(0.5)]], target="noise")


class TestGroundTruthFiles(unittest.TestCase):

    def test_save_load(self):

        x, truth = inject_ground_truth(generate_synthetic(SyntheticSpec(M=8, N=6, seed=2))[0],
                                       [Source(0, np.arange(8.), np.arange(6.) + 1.)], 0.5)
        with tempfile.TemporaryDirectory() as directory:
            path = truth.save(directory)
            self.assertEqual(os.path.basename(path), "truth.json")
            for loaded in (GroundTruth.load(path), GroundTruth.load(directory)):
                np.testing.assert_array_equal(loaded.true_sources[0].spatial, truth.true_sources[0].spatial)
                np.testing.assert_array_equal(loaded.true_sources[0].temporal, truth.true_sources[0].temporal)
                self.assertEqual(loaded.scales, truth.scales)
                self.assertEqual(loaded.target_variance, 0.5)
                self.assertEqual(loaded.noise_sigma, 0.)
