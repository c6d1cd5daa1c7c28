import numpy as np
from scipy.special import ndtri

# Largest argument of exp with a finite result
LOG_FLOAT_MAX = np.log(np.finfo(np.float64).max) - 1.


def sample_log_gamma(shape, rate, rng):
    """
    Logarithms of the draws of :func:`sample_gamma`, consuming the stream in the same way.
    The boost of small shapes is applied in log space, :math:`\\log X = \\log X' + \\log(U) / a`,
    which stays finite for shapes where :math:`U^{1/a}` underflows.

    Returns:
        log_x (ndarray): one log-draw per element.

    Raises:
        ValueError: if some shape or rate is not positive and finite.

    """
    shape, rate = np.broadcast_arrays(np.atleast_1d(np.asarray(shape, dtype=np.float64)),
                                      np.atleast_1d(np.asarray(rate, dtype=np.float64)))
    if np.any(~(shape > 0)) or np.any(~np.isfinite(shape)):
        raise ValueError("Gamma shapes must be positive and finite")
    if np.any(~(rate > 0)) or np.any(~np.isfinite(rate)):
        raise ValueError("Gamma rates must be positive and finite")
    n = shape.shape[0]

    boosted = shape < 1
    d = np.where(boosted, shape + 1, shape) - 1. / 3
    c = 1. / np.sqrt(9 * d)

    def propose(index, uniforms):
        di, ci = d[index], c[index]
        x = ndtri(uniforms[:, 0])
        v = (1 + ci * x) ** 3
        positive = v > 0
        log_v = np.log(np.where(positive, v, 1.))
        accepted = positive & (np.log(uniforms[:, 1]) < x ** 2 / 2 + di - di * v + di * log_v)

        # Boost of small shapes, read on the same round
        log_value = np.log(di) + log_v
        small = boosted[index]
        log_value[small] += np.log(uniforms[small, 2]) / shape[index][small]
        return accepted, log_value

    return rng.rejection_sample(n, propose) - np.log(rate)


def sample_gamma(shape, rate, rng):
    """
    This routine draws exact samples from Gamma distributions in the shape-rate convention,
    with density :math:`\\frac{\\beta^a}{\\Gamma(a)} x^{a-1} e^{-\\beta x}`.

    Shapes :math:`a \\geq 1` use the squeeze-free Marsaglia-Tsang rejection scheme.
    Shapes :math:`a < 1` draw from :math:`\\mathrm{Gamma}(a+1)` and multiply by :math:`U^{1/a}`,
    where :math:`U` is read on a spare lane of the accepted round, so that every element consumes
    exactly one position of the stream. Draws too small to be represented are returned as 0,
    see :func:`sample_log_gamma` for their logarithms.

    Args:
        shape (float or ndarray): positive shapes.
        rate (float or ndarray): positive rates.
        rng (RngHandle): random stream.

    Returns:
        x (ndarray): one draw per element.

    Raises:
        ValueError: if some shape or rate is not positive and finite.

    References:
        `[1] G. Marsaglia, W. Tsang (2000).
        A simple method for generating gamma variables.
        ACM Transactions on Mathematical Software, 26(3), 363-372.
        <https://doi.org/10.1145/358407.358414>`_

    """
    return np.exp(np.minimum(sample_log_gamma(shape, rate, rng), LOG_FLOAT_MAX))
