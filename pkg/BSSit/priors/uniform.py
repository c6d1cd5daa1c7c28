import numpy as np

from BSSit.prior import Prior
from BSSit.priors.posterior_steps import sample_normal


class Uniform(Prior):
    """
    The :class:`Uniform` class overwrites the methods of :class:`Prior` for the flat improper density on the real line.
    It has no hyperparameter. Combined with a uniform prior on the other factor, the model is
    probabilistic PCA without any regularisation.

    Example:
        >>> prior = Uniform()
        >>> prior.log_density(np.array([-3., 0., 1e6]))
        array([0., 0., 0.])

    """
    family = "Uniform"
    proper = False

    def _log_density(self, values):
        return np.zeros(values.shape)

    def _fit(self, values, params, max_iter, tol):
        return params

    def posterior_sample(self, lik, rng, current=None):
        return sample_normal(lik.mu, np.full(lik.size, lik.sigma), rng)

    def posterior_mode(self, lik):
        return lik.mu.copy()

    def draw(self, n, rng):
        return rng.standard_normal(n)
