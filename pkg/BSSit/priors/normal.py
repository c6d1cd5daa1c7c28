import numpy as np

from BSSit.prior import Prior
from BSSit.priors.posterior_steps import normal_posterior, sample_normal


class Normal(Prior):
    """
    The :class:`Normal` class overwrites the methods of :class:`Prior` for the centered normal density
    :math:`\\mathcal{N}(u | 0, \\tau^2)`.

    Attributes:
        params (dict): {'tau2': variance}.

    The posterior is normal (conjugacy) with variance :math:`(1/\\sigma^2 + 1/\\tau^2)^{-1}`
    and mean :math:`\\mu_i \\tau^2 / (\\tau^2 + \\sigma^2)`.

    Example:
        >>> prior = Normal(tau2=1.)
        >>> prior.log_density(np.array([0.]))
        array([-0.91893853])

    """
    family = "Normal"
    param_names = ("tau2",)
    scale_names = ("tau2",)
    default_params = {"tau2": 1.}

    def _log_density(self, values):
        tau2 = self.params["tau2"]
        return -np.log(2 * np.pi * tau2) / 2 - values ** 2 / (2 * tau2)

    def _fit(self, values, params, max_iter, tol):
        return {"tau2": float(np.mean(values ** 2))}

    def posterior_sample(self, lik, rng, current=None):
        mean, std = normal_posterior(lik, self.params["tau2"])
        return sample_normal(mean, std, rng)

    def posterior_mode(self, lik):
        mean, _ = normal_posterior(lik, self.params["tau2"])
        return mean

    def draw(self, n, rng):
        return np.sqrt(self.params["tau2"]) * rng.standard_normal(n)
