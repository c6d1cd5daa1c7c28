import numpy as np

from BSSit.priors.posterior_steps import normal_posterior, sample_non_negative
from BSSit.priors.student_t import StudentT


class HalfT(StudentT):
    """
    The :class:`HalfT` class is the Student-t density folded on :math:`[0, \\infty)`.
    It shares the hyperparameters, the latent precision augmentation and the ECME estimates of :class:`StudentT`,
    the conjugate normal posterior being truncated to the non-negative half line.

    Attributes:
        params (dict): {'s': scale, 'nu': degrees of freedom}.

    """
    family = "HalfT"
    non_negative = True

    def _log_density(self, values):
        return np.log(2.) + super()._log_density(values)

    def posterior_sample(self, lik, rng, current=None):
        mean, std = normal_posterior(lik, self._latent_prior_variance(lik, rng, current))
        return sample_non_negative(mean, std, rng)

    def draw(self, n, rng):
        return np.abs(super().draw(n, rng))
