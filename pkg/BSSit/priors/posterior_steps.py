import numpy as np
from scipy.special import expit, log_ndtr

from BSSit.sampling.truncated_normal import sample_truncated_normal
from BSSit.sampling.truncation_region import TruncationRegion

# Grid resolution and half width (in sigma) of the numerical mode search
MODE_GRID_SIZE = 129
MODE_HALF_WIDTH = 10.
MODE_ORIGIN_POINTS = 33
MODE_TOLERANCE = 1e-10
MODE_MAX_BISECTIONS = 200


def normal_posterior(lik, prior_variance):
    """
    Conjugate update of a centered normal prior with a Gaussian likelihood.

    Args:
        lik (GaussianLikelihood): the Gaussian factor.
        prior_variance (float or ndarray): prior variance(s) :math:`\\tau^2`.

    Returns:
        mean, std (ndarray): posterior means and standard deviations.

    """
    prior_variance = np.broadcast_to(np.asarray(prior_variance, dtype=np.float64), lik.mu.shape)
    mean = lik.mu * prior_variance / (prior_variance + lik.variance)
    std = np.sqrt(lik.variance * prior_variance / (prior_variance + lik.variance))
    return mean, std


def sample_normal(mean, std, rng):
    return mean + std * rng.standard_normal(mean.shape[0])


def sample_non_negative(mean, std, rng):
    return sample_truncated_normal(mean, std, TruncationRegion.non_negative(mean.shape[0]), rng)


def sample_exponential_tilt(lik, scale, rng):
    """
    Sample the posterior of an exponential prior of scale `scale` (per element or shared):
    the truncated normal :math:`\\mathcal{TN}(\\mu_i - \\sigma^2 / \\beta, \\sigma^2, [0, \\infty))`.

    """
    return sample_non_negative(lik.mu - lik.variance / scale, np.full(lik.size, lik.sigma), rng)


def laplace_piece_log_masses(lik, scale):
    """
    Log-masses of the positive and negative pieces of the posterior of a Laplace prior of scale `scale`.

    Returns:
        log_positive, log_negative (ndarray): unnormalised log-masses.

    """
    shift = lik.variance / scale
    log_positive = -lik.mu / scale + log_ndtr((lik.mu - shift) / lik.sigma)
    log_negative = lik.mu / scale + log_ndtr(-(lik.mu + shift) / lik.sigma)
    return log_positive, log_negative


def sample_laplace_tilt(lik, scale, rng):
    """
    Sample the posterior of a Laplace prior of scale `scale` (per element or shared).
    It is a two-piece mixture of :math:`\\mathcal{TN}(\\mu_i - \\sigma^2/b, \\sigma^2, [0, \\infty))`
    and :math:`\\mathcal{TN}(\\mu_i + \\sigma^2/b, \\sigma^2, (-\\infty, 0])`
    weighted by the mass of each piece.

    """
    n = lik.size
    shift = lik.variance / scale
    log_positive, log_negative = laplace_piece_log_masses(lik, scale)
    positive = rng.uniform(n) < expit(log_positive - log_negative)

    mean = np.where(positive, lik.mu - shift, lik.mu + shift)
    region = TruncationRegion(lower=np.where(positive, 0., -np.inf), upper=np.where(positive, np.inf, 0.))
    return sample_truncated_normal(mean, np.full(n, lik.sigma), region, rng)


def soft_threshold(values, threshold):
    return np.sign(values) * np.maximum(0., np.abs(values) - threshold)


def numerical_mode(lik, prior):
    """
    Elementwise maximisation of the log-posterior
    :math:`-\\frac{(u - \\mu_i)^2}{2 \\sigma^2} + \\log f(u|\\theta)` for priors without closed form mode.

    The gradient is evaluated on a grid of MODE_GRID_SIZE points spanning
    :math:`[\\min(0, \\mu_i) - 10\\sigma, \\max(0, \\mu_i) + 10\\sigma]` (clipped to the support),
    refined by 0 and MODE_ORIGIN_POINTS geometrically spaced points on each side of it, from :math:`10^{-6}\\sigma`
    to :math:`10\\sigma`, where priors much narrower than the likelihood put their peak.
    Every sign change from positive to negative brackets a local maximum that is refined by bisection
    to MODE_TOLERANCE. The bracketed maxima, the grid argmax and 0 compete on the log-posterior value.

    Args:
        lik (GaussianLikelihood): the Gaussian factor.
        prior (Prior): a prior implementing `_log_density` and `_grad_log_density`.

    Returns:
        mode (ndarray): the maximisers.

    """
    n = lik.size
    lower = np.minimum(0., lik.mu) - MODE_HALF_WIDTH * lik.sigma
    upper = np.maximum(0., lik.mu) + MODE_HALF_WIDTH * lik.sigma
    if prior.non_negative:
        lower = np.maximum(lower, 0.)

    def log_posterior(u, mu):
        return -(u - mu) ** 2 / (2 * lik.variance) + prior._log_density(u)

    def gradient(u, mu):
        return -(u - mu) / lik.variance + prior._grad_log_density(u)

    steps = np.linspace(0., 1., MODE_GRID_SIZE)
    near_origin = lik.sigma * np.logspace(-6., 1., MODE_ORIGIN_POINTS)
    near_origin = np.concatenate([-near_origin[::-1], [0.], near_origin])
    grid = np.concatenate([lower[:, None] + (upper - lower)[:, None] * steps[None, :],
                           np.clip(near_origin[None, :], lower[:, None], upper[:, None])], axis=1)
    grid.sort(axis=1)
    mu_grid = np.broadcast_to(lik.mu[:, None], grid.shape)

    # Best grid point and the origin
    values = log_posterior(grid, mu_grid)
    best_index = np.argmax(values, axis=1)
    mode = grid[np.arange(n), best_index]
    best = values[np.arange(n), best_index]
    zero = np.zeros(n)
    at_zero = log_posterior(zero, lik.mu)
    better = at_zero > best
    mode[better], best[better] = 0., at_zero[better]

    # Brackets of local maxima
    slopes = gradient(grid, mu_grid)
    rows, columns = np.nonzero((slopes[:, :-1] > 0) & (slopes[:, 1:] <= 0))
    if rows.size > 0:
        left, right = grid[rows, columns], grid[rows, columns + 1]
        mu = lik.mu[rows]
        for _ in range(MODE_MAX_BISECTIONS):
            if np.all(right - left <= MODE_TOLERANCE * np.maximum(1., np.abs(left))):
                break
            middle = (left + right) / 2
            ascending = gradient(middle, mu) > 0
            left = np.where(ascending, middle, left)
            right = np.where(ascending, right, middle)
        candidates = (left + right) / 2
        scores = log_posterior(candidates, mu)

        # Best candidate of every element
        order = np.lexsort((-scores, rows))
        _, first = np.unique(rows[order], return_index=True)
        winners = order[first]
        elements = rows[winners]
        better = scores[winners] > best[elements]
        mode[elements[better]] = candidates[winners][better]

    return mode
