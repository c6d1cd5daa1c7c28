import numpy as np
from scipy.optimize import brentq
from scipy.special import digamma
from scipy.stats import t as student_t

from BSSit.prior import Prior, SCALE_MIN
from BSSit.priors.posterior_steps import normal_posterior, numerical_mode, sample_normal
from BSSit.sampling.gamma import LOG_FLOAT_MAX, sample_gamma, sample_log_gamma

# Search range of the degrees of freedom; above NU_MAX the family is numerically Gaussian
NU_MIN = 0.1
NU_MAX = 1000.
NU_GRID = np.logspace(np.log10(NU_MIN), np.log10(NU_MAX), 49)


def t_log_likelihood(values, s, nu):
    return float(np.sum(student_t.logpdf(values, df=nu, scale=s)))


def nu_score(z2, nu):
    """
    Derivative with respect to :math:`\\nu` of the average log-likelihood of the standardized
    squared values `z2` under a Student-t distribution, evaluated at each entry of `nu`.

    """
    nu = np.atleast_1d(nu)[:, None]
    score = (digamma((nu + 1) / 2) - digamma(nu / 2)) / 2 - 1 / (2 * nu) \
        - np.mean(np.log1p(z2[None, :] / nu), axis=1)[:, None] / 2 \
        + (nu + 1) / (2 * nu) * np.mean(z2[None, :] / (nu + z2[None, :]), axis=1)[:, None]
    return score[:, 0]


def best_nu(values, s, nu):
    """
    Maximise the Student-t log-likelihood of `values` over the degrees of freedom, the scale being fixed.

    The score is evaluated on a logarithmic grid over [NU_MIN, NU_MAX]; every decreasing sign change is refined
    by Brent's method. The roots, both ends of the range and the current value `nu` compete on the likelihood.

    """
    z2 = values ** 2 / s ** 2
    scores = nu_score(z2, NU_GRID)

    candidates = [NU_MIN, NU_MAX, min(max(nu, NU_MIN), NU_MAX)]
    for index in np.nonzero((scores[:-1] > 0) & (scores[1:] <= 0))[0]:
        candidates.append(brentq(lambda x: nu_score(z2, x)[0], NU_GRID[index], NU_GRID[index + 1], xtol=1e-10))

    likelihoods = [t_log_likelihood(values, s, candidate) for candidate in candidates]
    return float(candidates[int(np.argmax(likelihoods))])


def fit_student_t(values, s, nu, max_iter=1, tol=0.):
    """
    ECME sweeps for the scale and degrees of freedom of a centered Student-t distribution.

    Each sweep computes the expected latent precisions :math:`w_i = (\\nu+1)/(\\nu + u_i^2/s^2)`,
    updates :math:`s^2 = \\mathrm{mean}(w_i u_i^2)`, then maximises the observed likelihood over :math:`\\nu`.

    Args:
        values (ndarray): observations.
        s (float): starting scale.
        nu (float): starting degrees of freedom.
        max_iter (int): maximal number of sweeps.
        tol (float): stop when both relative changes fall below `tol`.

    Returns:
        s, nu (float): the estimates, whose likelihood is at least the one of the starting point.

    References:
        `[1] C. Liu, D. Rubin (1995).
        ML estimation of the t distribution using EM and its extensions, ECM and ECME.
        Statistica Sinica, 5(1), 19-39.
        <https://www.jstor.org/stable/24305551>`_

    """
    start = (s, nu)
    start_likelihood = t_log_likelihood(values, s, nu)
    squares = values ** 2

    for _ in range(max_iter):
        weights = (nu + 1) / (nu + squares / s ** 2)
        new_s = max(np.sqrt(np.mean(weights * squares)), SCALE_MIN)
        new_nu = best_nu(values, new_s, nu)
        converged = abs(new_s - s) <= tol * s and abs(new_nu - nu) <= tol * nu
        s, nu = new_s, new_nu
        if converged:
            break

    if t_log_likelihood(values, s, nu) < start_likelihood:
        return start
    return s, nu


class StudentT(Prior):
    """
    The :class:`StudentT` class overwrites the methods of :class:`Prior` for the centered Student-t density
    of scale :math:`s` and :math:`\\nu` degrees of freedom.

    The Student-t distribution is a Gamma scale mixture of normals:
    :math:`u | \\lambda \\sim \\mathcal{N}(0, s^2/\\lambda)` with :math:`\\lambda \\sim \\mathrm{Gamma}(\\nu/2, \\nu/2)`.
    Posterior samples draw the latent precision given the current value, then the value from the conjugate normal
    posterior. Hyperparameters are estimated by ECME and the conditional mode is computed numerically.

    Attributes:
        params (dict): {'s': scale, 'nu': degrees of freedom}.

    """
    family = "StudentT"
    param_names = ("s", "nu")
    scale_names = ("s",)
    default_params = {"s": 1., "nu": 3.}

    def _log_density(self, values):
        return student_t.logpdf(values, df=self.params["nu"], scale=self.params["s"])

    def _grad_log_density(self, values):
        s, nu = self.params["s"], self.params["nu"]
        return -(nu + 1) * values / (nu * s ** 2 + values ** 2)

    def _fit(self, values, params, max_iter, tol):
        s, nu = fit_student_t(values, params["s"], params["nu"], max_iter=max_iter, tol=tol)
        return {"s": s, "nu": nu}

    def _latent_prior_variance(self, lik, rng, current):
        s, nu = self.params["s"], self.params["nu"]
        current = lik.mu if current is None else np.asarray(current, dtype=np.float64)
        precision = sample_gamma(np.full(lik.size, (nu + 1) / 2), (nu + (current / s) ** 2) / 2, rng)
        return s ** 2 / precision

    def posterior_sample(self, lik, rng, current=None):
        mean, std = normal_posterior(lik, self._latent_prior_variance(lik, rng, current))
        return sample_normal(mean, std, rng)

    def posterior_mode(self, lik):
        return numerical_mode(lik, self)

    def draw(self, n, rng):
        nu = self.params["nu"]
        log_precision = sample_log_gamma(np.full(n, nu / 2), np.full(n, nu / 2), rng)
        z = rng.standard_normal(n)
        with np.errstate(divide="ignore"):
            log_magnitude = np.log(self.params["s"]) + np.log(np.abs(z)) - log_precision / 2
        return np.sign(z) * np.exp(np.minimum(log_magnitude, LOG_FLOAT_MAX))
