import numpy as np
from scipy.optimize import brentq
from scipy.special import digamma
from scipy.stats import lomax

from BSSit.prior import Prior, SCALE_MIN
from BSSit.priors.posterior_steps import numerical_mode, sample_exponential_tilt
from BSSit.sampling.gamma import LOG_FLOAT_MAX, sample_gamma, sample_log_gamma

# Admissible range of the shape estimate
SHAPE_MIN = 1e-4
SHAPE_MAX = 1e6


def lomax_log_likelihood(values, beta, a):
    return float(np.sum(lomax.logpdf(values, c=a, scale=beta)))


def gamma_shape(rhs):
    """
    Solve :math:`\\log a - \\psi(a) = rhs` for the shape of a Gamma distribution, clamped to [SHAPE_MIN, SHAPE_MAX].

    """
    def equation(a):
        return np.log(a) - digamma(a) - rhs

    if equation(SHAPE_MAX) >= 0:
        return SHAPE_MAX
    if equation(SHAPE_MIN) <= 0:
        return SHAPE_MIN
    return brentq(equation, SHAPE_MIN, SHAPE_MAX, xtol=1e-12, rtol=1e-12)


def fit_lomax(values, beta, a, max_iter=1, tol=0.):
    """
    EM sweeps for the scale and shape of a Lomax distribution seen as a Gamma mixture of exponentials:
    :math:`u | r \\sim \\mathrm{Exp}(r)`, :math:`r \\sim \\mathrm{Gamma}(a, \\beta)`.

    The E-step computes :math:`E[r_i] = (a+1)/(\\beta+u_i)` and :math:`E[\\log r_i] = \\psi(a+1) - \\log(\\beta+u_i)`;
    the M-step is the Gamma maximum likelihood estimate given these expected sufficient statistics.

    Args:
        values (ndarray): non-negative observations.
        beta (float): starting scale.
        a (float): starting shape.
        max_iter (int): maximal number of sweeps.
        tol (float): stop when both relative changes fall below `tol`.

    Returns:
        beta, a (float): the estimates, whose likelihood is at least the one of the starting point.

    """
    start = (beta, a)
    start_likelihood = lomax_log_likelihood(values, beta, a)

    for _ in range(max_iter):
        mean_rate = np.mean((a + 1) / (beta + values))
        mean_log_rate = np.mean(digamma(a + 1) - np.log(beta + values))
        new_a = gamma_shape(np.log(mean_rate) - mean_log_rate)
        new_beta = max(new_a / mean_rate, SCALE_MIN)
        converged = abs(new_beta - beta) <= tol * beta and abs(new_a - a) <= tol * a
        beta, a = new_beta, new_a
        if converged:
            break

    if lomax_log_likelihood(values, beta, a) < start_likelihood:
        return start
    return beta, a


class Lomax(Prior):
    """
    The :class:`Lomax` class overwrites the methods of :class:`Prior` for the Lomax (Pareto type II) density
    :math:`\\frac{a}{\\beta}(1 + u/\\beta)^{-(a+1)}` on :math:`[0, \\infty)`.

    The Lomax distribution is a Gamma mixture of exponentials. Posterior samples draw the latent rate
    :math:`r_i \\sim \\mathrm{Gamma}(a+1, \\beta+|u_i|)` given the current value, then the value from the
    posterior of an exponential prior of scale :math:`1/r_i`. Hyperparameters are estimated by EM
    and the conditional mode is computed numerically.

    Attributes:
        params (dict): {'beta': scale, 'a': shape}.

    Example:
        >>> prior = Lomax(beta=2., a=3.)
        >>> prior.log_density(np.array([1.]))
        array([-1.21639532])

    """
    family = "Lomax"
    param_names = ("beta", "a")
    scale_names = ("beta",)
    default_params = {"beta": 1., "a": 3.}
    non_negative = True

    def _log_density(self, values):
        return lomax.logpdf(values, c=self.params["a"], scale=self.params["beta"])

    def _grad_log_density(self, values):
        return -(self.params["a"] + 1) / (self.params["beta"] + values)

    def _fit(self, values, params, max_iter, tol):
        beta, a = fit_lomax(values, params["beta"], params["a"], max_iter=max_iter, tol=tol)
        return {"beta": beta, "a": a}

    def _latent_rate(self, lik, rng, current):
        current = lik.mu if current is None else np.asarray(current, dtype=np.float64)
        return sample_gamma(np.full(lik.size, self.params["a"] + 1), self.params["beta"] + np.abs(current), rng)

    def posterior_sample(self, lik, rng, current=None):
        return sample_exponential_tilt(lik, 1. / self._latent_rate(lik, rng, current), rng)

    def posterior_mode(self, lik):
        return numerical_mode(lik, self)

    def draw(self, n, rng):
        # Shapes near SHAPE_MIN give rates below the smallest float
        log_rate = sample_log_gamma(np.full(n, self.params["a"]), np.full(n, self.params["beta"]), rng)
        return np.exp(np.minimum(np.log(rng.exponential(n)) - log_rate, LOG_FLOAT_MAX))
