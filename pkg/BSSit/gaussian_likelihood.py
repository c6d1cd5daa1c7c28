import numpy as np


class GaussianLikelihood(object):
    """
    A :class:`GaussianLikelihood` is the Gaussian factor :math:`\\mathcal{N}(u_i | \\mu_i, \\sigma^2)`
    of the conditional posterior of one factor column, all other columns being fixed.
    The standard deviation :math:`\\sigma` is shared by all the elements of the column.

    Attributes:
        mu (ndarray): per-element means.
        sigma (float): common standard deviation.

    """

    def __init__(self, mu, sigma):
        """

        Args:
            mu (array_like): finite means.
            sigma (float): positive and finite standard deviation.

        Raises:
            ValueError: if `sigma` is not positive and finite or if some mean is not finite.

        """
        self.mu = np.atleast_1d(np.asarray(mu, dtype=np.float64))
        self.sigma = float(sigma)

        if not (self.sigma > 0 and np.isfinite(self.sigma)):
            raise ValueError("sigma must be positive and finite, got {}".format(sigma))
        if not np.all(np.isfinite(self.mu)):
            raise ValueError("Likelihood means must be finite")

    @property
    def size(self):
        return self.mu.shape[0]

    @property
    def variance(self):
        return self.sigma ** 2

    def log_density(self, values):
        """
        Unnormalised log-likelihood of `values`, elementwise.

        """
        return -(values - self.mu) ** 2 / (2 * self.variance)
