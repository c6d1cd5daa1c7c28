import numpy as np

from BSSit.prior import Prior
from BSSit.priors.posterior_steps import sample_non_negative


class NonNegUniform(Prior):
    """
    The :class:`NonNegUniform` class overwrites the methods of :class:`Prior` for the flat improper density on
    :math:`[0, \\infty)`. Its conditional posterior is a normal truncated to the non-negative half line.

    """
    family = "NonNegUniform"
    non_negative = True
    proper = False

    def _log_density(self, values):
        return np.zeros(values.shape)

    def _fit(self, values, params, max_iter, tol):
        return params

    def posterior_sample(self, lik, rng, current=None):
        return sample_non_negative(lik.mu, np.full(lik.size, lik.sigma), rng)

    def posterior_mode(self, lik):
        return np.maximum(0., lik.mu)

    def draw(self, n, rng):
        return np.abs(rng.standard_normal(n))
