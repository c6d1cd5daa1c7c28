import numpy as np

from BSSit.priors.lomax import Lomax
from BSSit.priors.posterior_steps import sample_laplace_tilt


class DoubleLomax(Lomax):
    """
    The :class:`DoubleLomax` class is the Lomax density mirrored around 0,
    :math:`\\frac{a}{2\\beta}(1 + |u|/\\beta)^{-(a+1)}` on the real line.
    It is a Gamma mixture of Laplace distributions; given the latent rate, the posterior is the two-piece
    Laplace posterior of scale :math:`1/r_i`. Estimates are the ones of :class:`Lomax` on the absolute values.

    Attributes:
        params (dict): {'beta': scale, 'a': shape}.

    """
    family = "DoubleLomax"
    non_negative = False

    def _log_density(self, values):
        return np.log(0.5) + super()._log_density(np.abs(values))

    def _grad_log_density(self, values):
        return -np.sign(values) * (self.params["a"] + 1) / (self.params["beta"] + np.abs(values))

    def _fit(self, values, params, max_iter, tol):
        return super()._fit(np.abs(values), params, max_iter, tol)

    def posterior_sample(self, lik, rng, current=None):
        return sample_laplace_tilt(lik, 1. / self._latent_rate(lik, rng, current), rng)

    def draw(self, n, rng):
        magnitude = super().draw(n, rng)
        sign = np.where(rng.uniform(n) < 0.5, -1., 1.)
        return sign * magnitude
