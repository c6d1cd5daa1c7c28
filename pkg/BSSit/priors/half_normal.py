import numpy as np

from BSSit.prior import Prior
from BSSit.priors.posterior_steps import normal_posterior, sample_non_negative


class HalfNormal(Prior):
    """
    The :class:`HalfNormal` class overwrites the methods of :class:`Prior` for the half-normal density
    :math:`2 \\mathcal{N}(u | 0, \\tau^2)` on :math:`[0, \\infty)`.

    Attributes:
        params (dict): {'tau2': variance of the underlying normal}.

    """
    family = "HalfNormal"
    param_names = ("tau2",)
    scale_names = ("tau2",)
    default_params = {"tau2": 1.}
    non_negative = True

    def _log_density(self, values):
        tau2 = self.params["tau2"]
        return np.log(2.) - np.log(2 * np.pi * tau2) / 2 - values ** 2 / (2 * tau2)

    def _fit(self, values, params, max_iter, tol):
        return {"tau2": float(np.mean(values ** 2))}

    def posterior_sample(self, lik, rng, current=None):
        mean, std = normal_posterior(lik, self.params["tau2"])
        return sample_non_negative(mean, std, rng)

    def posterior_mode(self, lik):
        mean, _ = normal_posterior(lik, self.params["tau2"])
        return np.maximum(0., mean)

    def draw(self, n, rng):
        return np.sqrt(self.params["tau2"]) * np.abs(rng.standard_normal(n))
