import numpy as np

from BSSit.prior import Prior
from BSSit.priors.posterior_steps import sample_exponential_tilt


class Exponential(Prior):
    """
    The :class:`Exponential` class overwrites the methods of :class:`Prior` for the exponential density
    :math:`\\frac{1}{\\beta} e^{-u/\\beta}` on :math:`[0, \\infty)`.
    Its conditional posterior is the truncated normal :math:`\\mathcal{TN}(\\mu_i - \\sigma^2/\\beta, \\sigma^2, [0, \\infty))`.

    Attributes:
        params (dict): {'beta': scale (the mean)}.

    """
    family = "Exponential"
    param_names = ("beta",)
    scale_names = ("beta",)
    default_params = {"beta": 1.}
    non_negative = True

    def _log_density(self, values):
        beta = self.params["beta"]
        return -np.log(beta) - values / beta

    def _fit(self, values, params, max_iter, tol):
        return {"beta": float(np.mean(values))}

    def posterior_sample(self, lik, rng, current=None):
        return sample_exponential_tilt(lik, self.params["beta"], rng)

    def posterior_mode(self, lik):
        return np.maximum(0., lik.mu - lik.variance / self.params["beta"])

    def draw(self, n, rng):
        return self.params["beta"] * rng.exponential(n)
