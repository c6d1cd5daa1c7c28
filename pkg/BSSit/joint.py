import numpy as np

from BSSit.data_matrix import DataMatrix, as_data_matrix
from BSSit.tools.exceptions import ShapeError, SupportViolationError


def _columns(bank):
    return bank.columns if hasattr(bank, "columns") else np.asarray(bank, dtype=np.float64)


def _check_banks(u, v):
    if u.shape[1] != v.shape[1]:
        raise ShapeError("Factors have {} and {} sources".format(u.shape[1], v.shape[1]))


def reconstruct(u, v):
    """
    Compute the signal :math:`\\hat{X} = U V^\\top`.

    Args:
        u (FactorBank): M x K factor.
        v (FactorBank): N x K factor.

    Returns:
        x_hat (DataMatrix): the M x N reconstruction.

    Raises:
        ShapeError: if the banks do not have the same number of sources.

    """
    u, v = _columns(u), _columns(v)
    _check_banks(u, v)
    return DataMatrix(u @ v.T)


def residual(x, u, v, exclude=None):
    """
    Compute :math:`X - U V^\\top`, or :math:`\\tilde{X}^{(k)} = X - U_{-k} V_{-k}^\\top` when `exclude` is k.

    Args:
        x (DataMatrix): the data.
        u (FactorBank): M x K factor.
        v (FactorBank): N x K factor.
        exclude (int, optional): index of the source left out of the reconstruction.

    Returns:
        r (DataMatrix): the residual.

    Raises:
        ShapeError: if the shapes are inconsistent.
        IndexError: if `exclude` is not a valid source index.

    """
    x = as_data_matrix(x)
    u, v = _columns(u), _columns(v)
    _check_banks(u, v)
    if u.shape[0] != x.rows or v.shape[0] != x.cols:
        raise ShapeError("Factors of shapes {} and {} do not match data of shape {}".format(u.shape, v.shape, x.shape))

    if exclude is None:
        return DataMatrix(x.values - u @ v.T)
    if not 0 <= exclude < u.shape[1]:
        raise IndexError("Source index {} out of range [0, {})".format(exclude, u.shape[1]))
    keep = np.arange(u.shape[1]) != exclude
    return DataMatrix(x.values - u[:, keep] @ v[:, keep].T)


def neg_log_joint(x, state):
    """
    Negative log-joint probability of the data and the factors given the hyperparameters,
    with a flat hyperprior:

    .. math:: \\frac{\\alpha}{2} \\|X - UV^\\top\\|_F^2 - \\sum_{m,k} \\log f(u_m^k|\\theta_{U_k})
              - \\sum_{n,k} \\log g(v_n^k|\\theta_{V_k}) - \\frac{MN}{2} \\log \\frac{\\alpha}{2\\pi}

    Args:
        x (DataMatrix): the data.
        state (ModelState): factors, priors and noise precision.

    Returns:
        value (float): the negative log-joint.

    Raises:
        SupportViolationError: if some factor value lies outside the support of its prior.

    """
    x = as_data_matrix(x)
    error = np.sum(residual(x, state.u, state.v).values ** 2)
    return neg_log_joint_from_error(state, error, x.rows * x.cols)


def neg_log_joint_from_error(state, error, size):
    """
    Negative log-joint given the squared residual norm `error` of a data matrix with `size` entries.

    """
    value = state.alpha / 2 * error - size / 2 * np.log(state.alpha / (2 * np.pi))
    return float(value - log_prior(state))


def log_prior(state):
    """
    Sum of the log prior densities of all the factor values.

    Raises:
        SupportViolationError: if some factor value lies outside the support of its prior.

    """
    value = 0.
    for bank in (state.u, state.v):
        violations = bank.support_violations()
        if violations:
            raise SupportViolationError(bank.name, violations)
        for k, prior in enumerate(bank.priors):
            value += np.sum(prior.log_density(bank.columns[:, k]))
    return float(value)


def variance_explained(x, state):
    """
    Share of the data energy carried by every source, :math:`\\|U_k\\|^2 \\|V_k\\|^2 / \\|X\\|_F^2`.

    Returns:
        shares (ndarray): one value per source, 0 for all sources if the data are zero.

    """
    x = as_data_matrix(x)
    energy = x.squared_norm()
    products = np.sum(state.u.columns ** 2, axis=0) * np.sum(state.v.columns ** 2, axis=0)
    if energy == 0:
        return np.zeros(state.K)
    return products / energy
