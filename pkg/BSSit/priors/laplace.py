import numpy as np

from BSSit.prior import Prior
from BSSit.priors.posterior_steps import sample_laplace_tilt, soft_threshold


class Laplace(Prior):
    """
    The :class:`Laplace` class overwrites the methods of :class:`Prior` for the centered Laplace density
    :math:`\\frac{1}{2b} e^{-|u|/b}`. Its conditional mode is the soft-thresholded likelihood mean,
    which makes the model a probabilistic sparse PCA.

    Attributes:
        params (dict): {'b': scale}.

    Example:
        >>> prior = Laplace()
        >>> prior.fit_ml(np.array([-1., 2., -3.]))
        {'b': 2.0}

    """
    family = "Laplace"
    param_names = ("b",)
    scale_names = ("b",)
    default_params = {"b": 1.}

    def _log_density(self, values):
        b = self.params["b"]
        return -np.log(2 * b) - np.abs(values) / b

    def _fit(self, values, params, max_iter, tol):
        return {"b": float(np.mean(np.abs(values)))}

    def posterior_sample(self, lik, rng, current=None):
        return sample_laplace_tilt(lik, self.params["b"], rng)

    def posterior_mode(self, lik):
        return soft_threshold(lik.mu, lik.variance / self.params["b"])

    def draw(self, n, rng):
        uniforms = rng.uniform_lanes(n)
        sign = np.where(uniforms[:, 1] < 0.5, -1., 1.)
        return -self.params["b"] * np.log(uniforms[:, 0]) * sign
