import unittest

import cvxpy as cp
import numpy as np
from scipy import optimize, stats
from scipy.integrate import cumulative_trapezoid

from BSSit.gaussian_likelihood import GaussianLikelihood
from BSSit.priors import PRIOR_FAMILIES, DoubleLomax, Exponential, HalfNormal, HalfT, Laplace, Lomax, \
    NonNegUniform, Normal, StudentT, Uniform, make_prior, prior_from_dict
from BSSit.priors.lomax import lomax_log_likelihood
from BSSit.priors.student_t import t_log_likelihood
from BSSit.sampling import RngHandle


def posterior_cdf(prior, mu, sigma):
    """
    Numerical CDF of the posterior N(u | mu, sigma^2) f(u) on a fine grid.

    """
    lower = min(0., mu) - 12 * sigma
    if prior.non_negative:
        lower = 0.
    grid = np.linspace(lower, max(0., mu) + 12 * sigma, 200001)
    log_p = -(grid - mu) ** 2 / (2 * sigma ** 2) + prior.log_density(grid)
    density = np.exp(log_p - np.max(log_p))
    cdf = cumulative_trapezoid(density, grid, initial=0.)
    cdf /= cdf[-1]
    return lambda x: np.interp(x, grid, cdf)


class TestPriorBase(unittest.TestCase):

    def test_families(self):

        self.assertEqual(sorted(PRIOR_FAMILIES), sorted(["Uniform", "NonNegUniform", "Normal", "HalfNormal",
                                                         "Laplace", "Exponential", "StudentT", "HalfT",
                                                         "DoubleLomax", "Lomax"]))

    def test_make_prior(self):

        prior = make_prior("Lomax", {"beta": 2., "a": 3.})
        self.assertIsInstance(prior, Lomax)
        self.assertEqual(prior.get_params(), {"beta": 2., "a": 3.})
        self.assertEqual(repr(prior), "Lomax(beta=2, a=3)")

    def test_unknown_family(self):

        with self.assertRaises(ValueError) as context:
            make_prior("Cauchy")
        self.assertIn("Cauchy", str(context.exception))

    def test_dict_echo(self):

        prior = StudentT(s=0.5, nu=7., fixed=True)
        other = prior_from_dict(prior.to_dict())
        self.assertEqual(other.to_dict(), prior.to_dict())
        self.assertIsInstance(prior_from_dict("Laplace"), Laplace)

    def test_invalid_params(self):

        with self.assertRaises(ValueError):
            Normal(tau2=-1.)
        with self.assertRaises(TypeError):
            Normal(beta=1.)
        with self.assertRaises(ValueError):
            Lomax().set_params([1.])

    def test_sequence_params(self):

        prior = StudentT()
        prior.set_params([2., 5.])
        self.assertEqual(prior.get_params(), {"s": 2., "nu": 5.})

    def test_support(self):

        self.assertEqual(Exponential().log_density(np.array([-1.]))[0], -np.inf)
        self.assertEqual(HalfT().log_density(np.array([-1e-3]))[0], -np.inf)
        self.assertTrue(np.isfinite(Laplace().log_density(np.array([-1.]))[0]))

    def test_log_density_values(self):

        self.assertAlmostEqual(Normal(tau2=1.).log_density(np.array([0.]))[0], -0.91893853, delta=1e-8)
        self.assertAlmostEqual(Lomax(beta=2., a=3.).log_density(np.array([1.]))[0], -1.21639532, delta=1e-8)
        self.assertAlmostEqual(Exponential(beta=2.).log_density(np.array([1.]))[0], -np.log(2.) - 0.5, delta=1e-12)
        self.assertAlmostEqual(DoubleLomax(beta=2., a=3.).log_density(np.array([-1.]))[0],
                               np.log(0.5) - 1.21639532, delta=1e-8)
        self.assertEqual(list(Uniform().log_density(np.array([-3., 0., 1e6]))), [0., 0., 0.])

    def test_log_likelihood(self):

        prior = Exponential(beta=2.)
        values = np.array([1., 3.])
        self.assertAlmostEqual(prior.log_likelihood(values), -2 * np.log(2.) - 2., delta=1e-12)
        self.assertAlmostEqual(prior.log_likelihood(values, {"beta": 1.}), -4., delta=1e-12)
        self.assertEqual(prior.get_params()["beta"], 2.)

    def test_copy_is_independent(self):

        prior = Normal(tau2=2.)
        other = prior.copy()
        other.set_params({"tau2": 3.})
        self.assertEqual(prior.get_params()["tau2"], 2.)


class TestFitMl(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(0)

    def test_closed_forms(self):

        values = np.array([1., -2., 3.])
        self.assertAlmostEqual(Normal().fit_ml(values)["tau2"], 14. / 3, delta=1e-12)
        self.assertAlmostEqual(Laplace().fit_ml(values)["b"], 2., delta=1e-12)
        self.assertAlmostEqual(Exponential().fit_ml(np.abs(values))["beta"], 2., delta=1e-12)
        self.assertAlmostEqual(HalfNormal().fit_ml(np.abs(values))["tau2"], 14. / 3, delta=1e-12)

    def test_fixed(self):

        prior = Exponential(beta=5., fixed=True)
        self.assertEqual(prior.fit_ml(np.array([1., 2.])), {"beta": 5.})

    def test_short_input(self):

        prior = Exponential(beta=5.)
        self.assertEqual(prior.fit_ml(np.array([1.])), {"beta": 5.})

    def test_scale_floor(self):

        prior = Exponential()
        self.assertEqual(prior.fit_ml(np.zeros(10))["beta"], 1e-12)

    def test_invalid_values(self):

        with self.assertRaises(ValueError):
            Normal().fit_ml(np.array([1., np.nan]))
        with self.assertRaises(ValueError):
            Exponential().fit_ml(np.array([1., -1.]))

    def test_warm_start(self):

        prior = StudentT()
        values = stats.t.rvs(df=4., scale=2., size=200, random_state=1)
        prior.fit_ml(values, warm_start={"s": 2., "nu": 4.}, max_iter=0)
        self.assertEqual(prior.get_params(), {"s": 2., "nu": 4.})

    def test_student_t_recovery(self):

        values = stats.t.rvs(df=4., scale=2., size=100000, random_state=2)
        params = StudentT().fit_ml(values, max_iter=1000, tol=1e-12)
        self.assertAlmostEqual(params["s"], 2., delta=0.05 * 2.)
        self.assertAlmostEqual(params["nu"], 4., delta=0.15 * 4.)

        df, _, scale = stats.t.fit(values, floc=0.)
        self.assertGreaterEqual(t_log_likelihood(values, params["s"], params["nu"]),
                                t_log_likelihood(values, scale, df) - 1e-6 * len(values))

    def test_student_t_likelihood_never_decreases(self):

        values = stats.t.rvs(df=2., scale=0.3, size=500, random_state=3)
        prior = StudentT(s=5., nu=50.)
        previous = t_log_likelihood(values, 5., 50.)
        for _ in range(10):
            params = prior.fit_ml(values)
            current = t_log_likelihood(values, params["s"], params["nu"])
            self.assertGreaterEqual(current, previous - 1e-9)
            previous = current

    def test_lomax_recovery(self):

        values = stats.lomax.rvs(c=3., scale=2., size=100000, random_state=4)
        params = Lomax().fit_ml(values, max_iter=3000, tol=1e-12)
        self.assertAlmostEqual(params["beta"], 2., delta=0.05 * 2.)
        self.assertAlmostEqual(params["a"], 3., delta=0.15 * 3.)

        c, _, scale = stats.lomax.fit(values, floc=0.)
        self.assertGreaterEqual(lomax_log_likelihood(values, params["beta"], params["a"]),
                                lomax_log_likelihood(values, scale, c) - 1e-6 * len(values))

    def test_every_family_recovers_its_generating_hyperparameters(self):

        truths = [Normal(tau2=2.), HalfNormal(tau2=2.), Laplace(b=0.7), Exponential(beta=1.5), StudentT(s=2., nu=4.),
                  HalfT(s=1.5, nu=5.), Lomax(beta=2., a=3.), DoubleLomax(beta=0.5, a=2.5)]
        for seed, truth in enumerate(truths):
            values = truth.draw(100000, RngHandle(seed=40 + seed))
            params = make_prior(truth.family).fit_ml(values, max_iter=3000, tol=1e-12)
            for name in truth.param_names:
                tolerance = 0.05 if name in truth.scale_names else 0.15
                self.assertAlmostEqual(params[name], truth.params[name], delta=tolerance * truth.params[name],
                                       msg="{} {}".format(truth.family, name))

            # Independent numerical maximum of the likelihood, started from the generating hyperparameters
            def negative_log_likelihood(log_params):
                return -truth.log_likelihood(values, dict(zip(truth.param_names, np.exp(log_params))))

            start = np.log([truth.params[name] for name in truth.param_names])
            oracle = optimize.minimize(negative_log_likelihood, start, method="Nelder-Mead",
                                       options={"xatol": 1e-8, "fatol": 1e-8, "maxiter": 2000})
            self.assertGreaterEqual(truth.log_likelihood(values, params), -oracle.fun - 1e-6 * len(values),
                                    msg=truth.family)

    def test_lomax_likelihood_never_decreases(self):

        values = stats.lomax.rvs(c=1.5, scale=0.5, size=500, random_state=5)
        prior = Lomax(beta=10., a=20.)
        previous = lomax_log_likelihood(values, 10., 20.)
        for _ in range(10):
            params = prior.fit_ml(values)
            current = lomax_log_likelihood(values, params["beta"], params["a"])
            self.assertGreaterEqual(current, previous - 1e-9)
            previous = current

    def test_double_lomax_uses_magnitudes(self):

        values = stats.lomax.rvs(c=3., scale=2., size=300, random_state=6)
        signs = np.where(np.arange(300) % 2 == 0, -1., 1.)
        self.assertEqual(DoubleLomax().fit_ml(signs * values, max_iter=5), Lomax().fit_ml(values, max_iter=5))

    def test_shared_pooling_accepts_matrices(self):

        values = np.abs(self.rng.standard_normal((50, 3)))
        self.assertAlmostEqual(Exponential().fit_ml(values)["beta"], np.mean(values), delta=1e-12)


class TestPosteriorMode(unittest.TestCase):

    def setUp(self):
        self.lik = GaussianLikelihood(np.array([-2., -0.3, 0., 0.4, 1.7, 5.]), 0.8)

    def convex_oracle(self, penalty, non_negative=False, lik=None):
        lik = self.lik if lik is None else lik
        modes = list()
        for mu in lik.mu:
            u = cp.Variable()
            constraints = [u >= 0] if non_negative else []
            problem = cp.Problem(cp.Minimize(cp.square(u - mu) / (2 * lik.variance) + penalty(u)), constraints)
            problem.solve(solver=cp.CLARABEL)
            modes.append(u.value)
        return np.array(modes, dtype=float)

    @staticmethod
    def random_configurations(seed, n_configurations=20, n_means=3):
        """
        Seeded Gaussian factors with a scale and a shape hyperparameter.

        """
        rng = np.random.default_rng(seed)
        for _ in range(n_configurations):
            lik = GaussianLikelihood(rng.uniform(-4., 4., size=n_means), rng.uniform(0.1, 2.))
            yield lik, rng.uniform(0.2, 3.), rng.uniform(0.5, 8.)

    def assert_beats_dense_grid(self, prior, lik):
        mode = prior.posterior_mode(lik)
        self.assertTrue(np.all(prior.in_support(mode)))
        for i, mu in enumerate(lik.mu):
            lower = 0. if prior.non_negative else min(0., mu) - 10 * lik.sigma
            grid = np.linspace(lower, max(0., mu) + 10 * lik.sigma, 1000001)
            grid_values = -(grid - mu) ** 2 / (2 * lik.variance) + prior.log_density(grid)
            value = -(mode[i] - mu) ** 2 / (2 * lik.variance) + prior.log_density(np.array([mode[i]]))[0]
            self.assertGreaterEqual(value, np.max(grid_values) - 1e-9, msg=repr(prior))

    def test_normal(self):

        prior = Normal(tau2=0.5)
        oracle = self.convex_oracle(lambda u: cp.square(u) / (2 * 0.5))
        np.testing.assert_allclose(prior.posterior_mode(self.lik), oracle, atol=1e-4)

    def test_half_normal(self):

        prior = HalfNormal(tau2=0.5)
        oracle = self.convex_oracle(lambda u: cp.square(u) / (2 * 0.5), non_negative=True)
        np.testing.assert_allclose(prior.posterior_mode(self.lik), oracle, atol=1e-4)

    def test_laplace(self):

        prior = Laplace(b=0.7)
        oracle = self.convex_oracle(lambda u: cp.abs(u) / 0.7)
        np.testing.assert_allclose(prior.posterior_mode(self.lik), oracle, atol=1e-4)

    def test_exponential(self):

        prior = Exponential(beta=0.7)
        oracle = self.convex_oracle(lambda u: u / 0.7, non_negative=True)
        np.testing.assert_allclose(prior.posterior_mode(self.lik), oracle, atol=1e-4)

    def test_flat_families(self):

        np.testing.assert_array_equal(Uniform().posterior_mode(self.lik), self.lik.mu)
        np.testing.assert_array_equal(NonNegUniform().posterior_mode(self.lik), np.maximum(self.lik.mu, 0.))

    def test_closed_form_modes_random_configurations(self):

        families = ((Normal, "tau2", lambda u, scale: cp.square(u) / (2 * scale)),
                    (HalfNormal, "tau2", lambda u, scale: cp.square(u) / (2 * scale)),
                    (Laplace, "b", lambda u, scale: cp.abs(u) / scale),
                    (Exponential, "beta", lambda u, scale: u / scale))
        for index, (family, name, penalty) in enumerate(families):
            for lik, scale, _ in self.random_configurations(seed=index):
                prior = family(**{name: scale})
                oracle = self.convex_oracle(lambda u: penalty(u, scale), prior.non_negative, lik)
                np.testing.assert_allclose(prior.posterior_mode(lik), oracle, atol=1e-4, err_msg=repr(prior))

    def test_numerical_modes_beat_dense_grid(self):

        for prior in (StudentT(s=0.5, nu=2.), HalfT(s=0.5, nu=2.), Lomax(beta=0.5, a=1.5),
                      DoubleLomax(beta=0.5, a=1.5)):
            self.assert_beats_dense_grid(prior, self.lik)

    def test_numerical_modes_random_configurations(self):

        families = ((StudentT, "s", "nu"), (HalfT, "s", "nu"), (Lomax, "beta", "a"), (DoubleLomax, "beta", "a"))
        for index, (family, scale_name, shape_name) in enumerate(families):
            for lik, scale, shape in self.random_configurations(seed=10 + index, n_means=2):
                self.assert_beats_dense_grid(family(**{scale_name: scale, shape_name: shape}), lik)

    def test_narrow_prior_peak(self):

        # Bimodal posterior whose peak at the prior is much narrower than the likelihood
        lik = GaussianLikelihood(np.array([0.5, 2.]), 2.)
        for prior in (StudentT(s=1e-3, nu=1.), Lomax(beta=1e-3, a=1.)):
            self.assert_beats_dense_grid(prior, lik)


class TestPosteriorSample(unittest.TestCase):

    def setUp(self):
        self.n = 4000
        self.mu, self.sigma = 0.6, 0.5
        self.lik = GaussianLikelihood(np.full(self.n, self.mu), self.sigma)

    def check_sample(self, prior, x):
        self.assertTrue(np.all(prior.in_support(x)))
        pvalue = stats.kstest(x, posterior_cdf(prior, self.mu, self.sigma)).pvalue
        self.assertGreater(pvalue, 1e-3)

    def test_conjugate_families(self):

        for prior in (Uniform(), NonNegUniform(), Normal(tau2=0.3), HalfNormal(tau2=0.3),
                      Exponential(beta=0.4), Laplace(b=0.2)):
            self.check_sample(prior, prior.posterior_sample(self.lik, RngHandle(seed=11)))

    def test_compound_families_stationary(self):

        for prior in (StudentT(s=0.3, nu=3.), HalfT(s=0.3, nu=3.), Lomax(beta=0.5, a=2.),
                      DoubleLomax(beta=0.5, a=2.)):
            rng = RngHandle(seed=12)
            x = None
            for _ in range(40):
                x = prior.posterior_sample(self.lik, rng, current=x)
            self.check_sample(prior, x)


class TestDraw(unittest.TestCase):

    def check_draw(self, prior, distribution):
        x = prior.draw(5000, RngHandle(seed=21))
        self.assertTrue(np.all(prior.in_support(x)))
        self.assertGreater(stats.kstest(x, distribution.cdf).pvalue, 1e-3)

    def test_draws(self):

        self.check_draw(Normal(tau2=4.), stats.norm(scale=2.))
        self.check_draw(HalfNormal(tau2=4.), stats.halfnorm(scale=2.))
        self.check_draw(Exponential(beta=3.), stats.expon(scale=3.))
        self.check_draw(Laplace(b=0.5), stats.laplace(scale=0.5))
        self.check_draw(StudentT(s=2., nu=3.), stats.t(df=3., scale=2.))
        self.check_draw(Lomax(beta=2., a=3.), stats.lomax(c=3., scale=2.))

    def test_heavy_tailed_draws_stay_finite(self):

        rng = RngHandle(seed=22)
        for prior in (Lomax(beta=1., a=1e-4), DoubleLomax(beta=1., a=1e-4), StudentT(s=1., nu=1e-3),
                      HalfT(s=1., nu=1e-3)):
            x = prior.draw(2000, rng)
            self.assertTrue(np.all(np.isfinite(x)), msg=repr(prior))
            self.assertTrue(np.all(prior.in_support(x)), msg=repr(prior))
            self.assertGreater(np.max(np.abs(x)), 1e300, msg=repr(prior))
