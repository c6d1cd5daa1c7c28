import numpy as np

from BSSit.gaussian_likelihood import GaussianLikelihood
from BSSit.joint import neg_log_joint_from_error
from BSSit.tools.exceptions import DeadSourceError


class ReducedCache(object):
    """
    A :class:`ReducedCache` holds the reduced factors :math:`U^{(R)} = Q^{(U)\\top} U`,
    :math:`V^{(R)} = Q^{(V)\\top} V` and the reduced products of the factor being updated.
    For the update of U, :math:`A^{(R)} = X^{(R)} V^{(R)}` and :math:`B^{(R)} = V^{(R)\\top} V^{(R)}`;
    for the update of V, :math:`A^{(R)} = X^{(R)\\top} U^{(R)}` and :math:`B^{(R)} = U^{(R)\\top} U^{(R)}`.
    Nothing here depends on the full data matrix.

    Attributes:
        u_reduced (ndarray): M_R x K.
        v_reduced (ndarray): N_R x K.
        a_reduced (ndarray): reduced A of the factor being updated.
        b_reduced (ndarray): reduced B of the factor being updated.
        which (str): 'U' or 'V'.

    """

    def __init__(self, u_reduced, v_reduced, a_reduced, b_reduced, which="U"):
        self.u_reduced = u_reduced
        self.v_reduced = v_reduced
        self.a_reduced = a_reduced
        self.b_reduced = b_reduced
        self.which = which

    @classmethod
    def from_state(cls, pp, state, which):
        """
        Project the current factors and build the reduced products for the update of factor `which`.

        Args:
            pp (ProjectionPair): the projections.
            state (ModelState): current factors.
            which (str): 'U' or 'V'.

        """
        u_reduced = pp.q_u.T @ state.u.columns
        v_reduced = pp.q_v.T @ state.v.columns
        if which == "U":
            return cls(u_reduced, v_reduced, pp.x_reduced @ v_reduced, v_reduced.T @ v_reduced, which)
        return cls(u_reduced, v_reduced, pp.x_reduced.T @ u_reduced, u_reduced.T @ u_reduced, which)

    def updated_reduced(self):
        return self.u_reduced if self.which == "U" else self.v_reduced

    def refresh_column(self, pp, bank, k):
        """
        Project the new full-space column k of the factor being updated.

        """
        self.updated_reduced()[:, k] = pp.basis(self.which).T @ bank.columns[:, k]


def likelihood_params_reduced(pp, rc, alpha, k, threshold=1e-12):
    """
    Gaussian factor of the conditional posterior of column k computed in reduced coordinates
    and lifted back to full space:

    .. math:: \\mu^{(k)} = Q \\frac{A^{(R)}_k - F^{(R)} B^{(R)}_k + F^{(R)}_k B^{(R)}_{k,k}}{B^{(R)}_{k,k}},
              \\qquad \\sigma^{(k)} = \\frac{1}{\\sqrt{\\alpha B^{(R)}_{k,k}}}

    where :math:`F^{(R)}` is the reduced factor being updated and :math:`Q` its basis.

    Args:
        pp (ProjectionPair): the projections.
        rc (ReducedCache): the reduced factors and products.
        alpha (float): noise precision.
        k (int): source index.
        threshold (float): dead source threshold on :math:`B^{(R)}_{k,k}`.

    Returns:
        lik (GaussianLikelihood): the lifted Gaussian factor.

    Raises:
        DeadSourceError: if :math:`B^{(R)}_{k,k}` is not above `threshold`.

    """
    b_kk = rc.b_reduced[k, k]
    if not b_kk > threshold:
        raise DeadSourceError(rc.which, k, b_kk)
    factor = rc.updated_reduced()
    mean = (rc.a_reduced[:, k] - factor @ rc.b_reduced[:, k] + factor[:, k] * b_kk) / b_kk
    return GaussianLikelihood(pp.basis(rc.which) @ mean, 1. / np.sqrt(alpha * b_kk))


def reduced_squared_error(pp, state):
    """
    Residual energy of the current factors seen through the projections,
    :math:`\\|X^{(R)} - U^{(R)} V^{(R)\\top}\\|_F^2 + \\|X\\|_F^2 - \\|X^{(R)}\\|_F^2`:
    the energy outside the projected subspace counts as noise.

    """
    u_reduced = pp.q_u.T @ state.u.columns
    v_reduced = pp.q_v.T @ state.v.columns
    return float(np.sum((pp.x_reduced - u_reduced @ v_reduced.T) ** 2)) + pp.discarded_energy


def update_noise_precision_reduced(pp, state, size, alpha_min=1e-10, alpha_max=1e12):
    """
    Maximum likelihood noise precision from the reduced residual energy.

    Args:
        pp (ProjectionPair): the projections.
        state (ModelState): current factors.
        size (int): number of data entries MN.
        alpha_min (float): floor.
        alpha_max (float): cap, also returned for an exactly zero residual.

    """
    error = reduced_squared_error(pp, state)
    if error <= 0:
        return alpha_max
    return float(np.clip(size / error, alpha_min, alpha_max))


def neg_log_joint_reduced(pp, state, size):
    """
    Negative log-joint with the residual energy of :func:`reduced_squared_error`.

    """
    return neg_log_joint_from_error(state, reduced_squared_error(pp, state), size)
