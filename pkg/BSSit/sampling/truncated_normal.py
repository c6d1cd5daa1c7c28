import numpy as np
from scipy.special import ndtri

from BSSit.sampling.truncation_region import TruncationRegion

# Intervals containing the mode and narrower than sqrt(2 pi) are sampled by uniform rejection,
# wider ones by plain normal rejection.
UNIFORM_MAX_WIDTH = np.sqrt(2 * np.pi)

# Beyond this standardized lower bound, the region is indistinguishable from empty.
MAX_STANDARDIZED_BOUND = 1e10

# Method codes of the region dispatch
NORMAL_REJECTION = 0
UNIFORM_REJECTION = 1
EXPONENTIAL_REJECTION = 2


def tail_uniform_width(a):
    """
    Width below which a one-sided interval [a, b] with a > 0 is sampled by uniform rejection
    rather than by the translated exponential proposal (the two acceptance rates coincide at this width).

    Args:
        a (ndarray): standardized lower bounds, positive.

    Returns:
        width (ndarray): the switching widths.

    """
    root = np.sqrt(a ** 2 + 4)
    return 2 * np.sqrt(np.e) / (a + root) * np.exp((a ** 2 - a * root) / 4)


def select_method(a, b):
    """
    Choose the rejection strategy of every standardized interval [a, b] with b > 0.

    Returns:
        method (ndarray): one of NORMAL_REJECTION, UNIFORM_REJECTION, EXPONENTIAL_REJECTION per element.

    """
    method = np.full(a.shape, EXPONENTIAL_REJECTION)
    width = b - a

    contains_mode = a <= 0
    method[contains_mode & (width >= UNIFORM_MAX_WIDTH)] = NORMAL_REJECTION
    method[contains_mode & (width < UNIFORM_MAX_WIDTH)] = UNIFORM_REJECTION

    tail = ~contains_mode
    narrow_tail = np.zeros(a.shape, dtype=bool)
    narrow_tail[tail] = width[tail] < tail_uniform_width(a[tail])
    method[narrow_tail] = UNIFORM_REJECTION

    return method


def sample_truncated_normal(mu, sigma, region, rng):
    """
    This routine draws exact samples from normal distributions :math:`\\mathcal{N}(\\mu_i, \\sigma_i^2)`
    restricted to per-element intervals :math:`[l_i, u_i]`.

    Every element is standardized, intervals lying left of 0 are mirrored, and each element is sampled
    by one of three rejection schemes:

        - plain normal rejection when the interval contains the mode and is wide,
        - uniform rejection under the maximal density when the interval is narrow,
        - rejection from a translated exponential proposal with optimal rate
          :math:`\\lambda = (a + \\sqrt{a^2 + 4}) / 2` when the interval lies in the tail.

    Args:
        mu (ndarray): means.
        sigma (float or ndarray): positive standard deviations.
        region (TruncationRegion): the truncation intervals, broadcast against `mu`.
        rng (RngHandle): random stream.

    Returns:
        x (ndarray): one draw per element, inside its region.

    Raises:
        ValueError: if some sigma is not positive, or if a region starts further than
                    MAX_STANDARDIZED_BOUND standard deviations in the tail.

    """
    mu = np.atleast_1d(np.asarray(mu, dtype=np.float64))
    n = mu.shape[0]
    sigma = np.broadcast_to(np.asarray(sigma, dtype=np.float64), (n,))
    if not isinstance(region, TruncationRegion):
        raise TypeError("region must be a TruncationRegion, got {}".format(type(region)))
    if np.any(~(sigma > 0)) or np.any(~np.isfinite(sigma)):
        raise ValueError("Standard deviations must be positive and finite")
    lower, upper = region.broadcast_to(n)

    # Standardize
    a = (lower - mu) / sigma
    b = (upper - mu) / sigma

    # Mirror intervals lying left of 0
    flip = b <= 0
    sign = np.where(flip, -1., 1.)
    a, b = np.where(flip, -b, a), np.where(flip, -a, b)

    if np.any(a > MAX_STANDARDIZED_BOUND):
        raise ValueError("Truncation region starts more than {} standard deviations"
                         " in the tail".format(MAX_STANDARDIZED_BOUND))

    method = select_method(a, b)
    rate = np.zeros(n)
    tail = method == EXPONENTIAL_REJECTION
    rate[tail] = (a[tail] + np.sqrt(a[tail] ** 2 + 4)) / 2

    def propose(index, uniforms):
        ai, bi, mi = a[index], b[index], method[index]
        z = np.empty(index.shape[0])
        accepted = np.zeros(index.shape[0], dtype=bool)

        # Plain rejection
        selection = mi == NORMAL_REJECTION
        if np.any(selection):
            z[selection] = ndtri(uniforms[selection, 0])
            accepted[selection] = (z[selection] >= ai[selection]) & (z[selection] <= bi[selection])

        # Uniform rejection; the envelope is the density at the point of the interval closest to 0
        selection = mi == UNIFORM_REJECTION
        if np.any(selection):
            lo, hi = ai[selection], bi[selection]
            candidate = lo + (hi - lo) * uniforms[selection, 0]
            closest = np.maximum(lo, 0.)
            log_ratio = -(candidate - closest) * (candidate + closest) / 2
            z[selection] = candidate
            accepted[selection] = np.log(uniforms[selection, 1]) <= log_ratio

        # Translated exponential proposal
        selection = mi == EXPONENTIAL_REJECTION
        if np.any(selection):
            lo, hi, lam = ai[selection], bi[selection], rate[index][selection]
            candidate = lo - np.log(uniforms[selection, 0]) / lam
            z[selection] = candidate
            accepted[selection] = (candidate <= hi) & (np.log(uniforms[selection, 1]) <= -(candidate - lam) ** 2 / 2)

        return accepted, z

    z = rng.rejection_sample(n, propose)
    x = mu + sigma * sign * z

    # Rounding in the back-transformation may cross a bound by one ulp
    return np.clip(x, lower, upper)
