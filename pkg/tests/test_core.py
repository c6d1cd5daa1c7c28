import unittest

import numpy as np

from BSSit import DataMatrix, FactorBank, GaussianLikelihood, ModelState, Source, UpdateCache, as_data_matrix
from BSSit.joint import log_prior, neg_log_joint, reconstruct, residual, variance_explained
from BSSit.model_state import log_norm_ratio
from BSSit.priors import Exponential, Normal, Uniform
from BSSit.tools.exceptions import ShapeError, SupportViolationError


class TestDataMatrix(unittest.TestCase):

    def setUp(self):
        self.values = np.arange(6.).reshape(2, 3)
        self.x = DataMatrix(self.values)

    def test_shape(self):

        self.assertEqual(self.x.shape, (2, 3))
        self.assertEqual((self.x.rows, self.x.cols), (2, 3))
        self.assertEqual(self.x.squared_norm(), 55.)

    def test_read_only_copy(self):

        self.values[0, 0] = 100.
        self.assertEqual(self.x.values[0, 0], 0.)
        with self.assertRaises(ValueError):
            self.x.values[0, 0] = 1.

    def test_invalid(self):

        with self.assertRaises(ShapeError):
            DataMatrix(np.zeros(3))
        with self.assertRaises(ShapeError):
            DataMatrix(np.zeros((0, 3)))
        with self.assertRaises(ValueError):
            DataMatrix(np.array([[1., np.inf]]))

    def test_as_data_matrix(self):

        self.assertIs(as_data_matrix(self.x), self.x)
        self.assertEqual(as_data_matrix(np.arange(6.).reshape(2, 3)), self.x)


class TestGaussianLikelihood(unittest.TestCase):

    def test_attributes(self):

        lik = GaussianLikelihood([1., 2.], 0.5)
        self.assertEqual(lik.size, 2)
        self.assertEqual(lik.variance, 0.25)
        np.testing.assert_allclose(lik.log_density(np.array([1., 3.])), [0., -2.])

    def test_invalid(self):

        with self.assertRaises(ValueError):
            GaussianLikelihood([0.], 0.)
        with self.assertRaises(ValueError):
            GaussianLikelihood([np.nan], 1.)


class TestFactorBank(unittest.TestCase):

    def test_broadcast_prior_copies(self):

        bank = FactorBank(np.ones((5, 3)), Exponential(beta=2.), name="V")
        self.assertEqual(bank.K, 3)
        self.assertEqual(bank.dim, 5)
        self.assertEqual(len(set(map(id, bank.priors))), 3)
        bank.priors[0].set_params({"beta": 7.})
        self.assertEqual(bank.hyperparameters(), [{"beta": 7.}, {"beta": 2.}, {"beta": 2.}])
        self.assertEqual(bank.families(), ["Exponential"] * 3)

    def test_shared_prior_objects_are_copied(self):

        prior = Normal()
        bank = FactorBank(np.zeros((4, 2)), [prior, prior])
        self.assertIsNot(bank.priors[0], bank.priors[1])

    def test_invalid(self):

        with self.assertRaises(ShapeError):
            FactorBank(np.zeros((2, 3)), Normal())
        with self.assertRaises(ShapeError):
            FactorBank(np.zeros((4, 2)), [Normal()])
        with self.assertRaises(TypeError):
            FactorBank(np.zeros((4, 1)), ["Normal"])
        with self.assertRaises(ValueError):
            FactorBank(-np.ones((4, 1)), Exponential())

    def test_copy(self):

        bank = FactorBank(np.ones((3, 1)), Normal())
        other = bank.copy()
        other.columns[0, 0] = 5.
        self.assertEqual(bank.columns[0, 0], 1.)


class TestModelState(unittest.TestCase):

    def setUp(self):
        self.u = FactorBank(np.array([[1., 0.], [0., 2.], [0., 0.]]), Normal(), name="U")
        self.v = FactorBank(np.array([[1., 1.], [2., 0.]]), Exponential(), name="V")
        self.state = ModelState(self.u, self.v, alpha=2.)

    def test_bank(self):

        self.assertEqual(self.state.bank("U"), (self.u, self.v))
        self.assertEqual(self.state.bank("V"), (self.v, self.u))
        with self.assertRaises(ValueError):
            self.state.bank("W")

    def test_invalid(self):

        with self.assertRaises(ShapeError):
            ModelState(self.u, FactorBank(np.ones((2, 1)), Exponential()))
        with self.assertRaises(ValueError):
            ModelState(self.u, self.v, alpha=0.)

    def test_sources(self):

        x = DataMatrix(reconstruct(self.u, self.v).values)
        sources = self.state.sources(x)
        self.assertEqual(len(sources), 2)
        np.testing.assert_allclose(sources[0].matrix(), np.outer(self.u.columns[:, 0], self.v.columns[:, 0]))
        self.assertAlmostEqual(sources[0].variance_explained, 5. / x.squared_norm(), delta=1e-12)

    def test_events_and_copy(self):

        self.state.log_event("dead_source", source=1)
        other = self.state.copy()
        other.u.columns[0, 0] = 9.
        other.log_event("dead_source", source=0)
        self.assertEqual(self.u.columns[0, 0], 1.)
        self.assertEqual(len(self.state.events), 1)
        self.assertEqual(self.state.events[0], {"kind": "dead_source", "iteration": 0, "source": 1})

    def test_log_norm_ratio(self):

        self.assertEqual(log_norm_ratio(np.array([0., 3., 0.])), 0.)
        self.assertAlmostEqual(log_norm_ratio(np.ones(4)), np.log(2.), delta=1e-12)
        self.assertTrue(np.isnan(log_norm_ratio(np.zeros(3))))
        spatial, temporal = Source(0, np.ones(4), np.array([1., 0.])).sparsity()
        self.assertAlmostEqual(spatial, np.log(2.), delta=1e-12)
        self.assertEqual(temporal, 0.)


class TestJoint(unittest.TestCase):

    def setUp(self):
        rng = np.random.default_rng(0)
        self.u = FactorBank(rng.standard_normal((6, 2)), Normal(tau2=2.), name="U")
        self.v = FactorBank(np.abs(rng.standard_normal((5, 2))), Exponential(beta=0.5), name="V")
        self.x = DataMatrix(rng.standard_normal((6, 5)))
        self.state = ModelState(self.u, self.v, alpha=3.)

    def test_residual(self):

        r = residual(self.x, self.u, self.v)
        np.testing.assert_allclose(r.values, self.x.values - self.u.columns @ self.v.columns.T)
        r1 = residual(self.x, self.u, self.v, exclude=1)
        np.testing.assert_allclose(r1.values, self.x.values - np.outer(self.u.columns[:, 0], self.v.columns[:, 0]))

    def test_residual_errors(self):

        with self.assertRaises(IndexError):
            residual(self.x, self.u, self.v, exclude=2)
        with self.assertRaises(ShapeError):
            residual(DataMatrix(np.zeros((5, 5))), self.u, self.v)

    def test_neg_log_joint(self):

        error = np.sum((self.x.values - self.u.columns @ self.v.columns.T) ** 2)
        expected = 1.5 * error - 15 * np.log(3. / (2 * np.pi))
        expected -= np.sum(-np.log(4 * np.pi) / 2 - self.u.columns ** 2 / 4)
        expected -= np.sum(np.log(2.) - 2 * self.v.columns)
        self.assertAlmostEqual(neg_log_joint(self.x, self.state), expected, delta=1e-9)

    def test_support_violation(self):

        self.v.columns[0, 1] = -1.
        with self.assertRaises(SupportViolationError) as context:
            log_prior(self.state)
        self.assertEqual(context.exception.factor, "V")
        self.assertEqual(context.exception.columns, [1])

    def test_variance_explained(self):

        x = reconstruct(self.u, self.v)
        shares = variance_explained(x, self.state)
        expected = np.sum(self.u.columns ** 2, axis=0) * np.sum(self.v.columns ** 2, axis=0) / x.squared_norm()
        np.testing.assert_allclose(shares, expected)


class TestUpdateCache(unittest.TestCase):

    def test_products(self):

        rng = np.random.default_rng(1)
        u = FactorBank(rng.standard_normal((4, 2)), Uniform(), name="U")
        v = FactorBank(rng.standard_normal((3, 2)), Uniform(), name="V")
        x = DataMatrix(rng.standard_normal((4, 3)))
        state = ModelState(u, v)

        cache = UpdateCache.from_state(x, state, "U")
        np.testing.assert_allclose(cache.a, x.values @ v.columns)
        np.testing.assert_allclose(cache.b, v.columns.T @ v.columns)

        cache = UpdateCache.from_state(x, state, "V")
        np.testing.assert_allclose(cache.a, x.values.T @ u.columns)
        np.testing.assert_allclose(cache.b, u.columns.T @ u.columns)
        self.assertEqual(cache.which, "V")

    def test_invalid(self):

        with self.assertRaises(ShapeError):
            UpdateCache(np.zeros((3, 2)), np.zeros((3, 3)))
