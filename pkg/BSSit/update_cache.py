import numpy as np

from BSSit.data_matrix import as_data_matrix
from BSSit.tools.exceptions import ShapeError


class UpdateCache(object):
    """
    An :class:`UpdateCache` stores the two products the conditional posteriors of one factor depend on.
    For the update of U, :math:`A = XV` and :math:`B = V^\\top V`;
    for the update of V, :math:`A = X^\\top U` and :math:`B = U^\\top U`.
    Both only involve the partner factor, hence stay valid during a whole sweep over the columns of the updated one.

    Attributes:
        a (ndarray): dim x K matrix A.
        b (ndarray): K x K symmetric positive semidefinite matrix B.
        which (str): 'U' or 'V', the factor being updated.

    """

    def __init__(self, a, b, which="U"):
        """

        Raises:
            ShapeError: if A and B have inconsistent shapes or B is not square.

        """
        a = np.asarray(a, dtype=np.float64)
        b = np.asarray(b, dtype=np.float64)
        if b.ndim != 2 or b.shape[0] != b.shape[1] or a.ndim != 2 or a.shape[1] != b.shape[0]:
            raise ShapeError("Inconsistent cache shapes: A {} and B {}".format(a.shape, b.shape))
        self.a = a
        self.b = b
        self.which = which

    @classmethod
    def from_state(cls, x, state, which):
        """
        Build the cache for the update of factor `which`.

        Args:
            x (DataMatrix): the data.
            state (ModelState): current factors.
            which (str): 'U' or 'V'.

        Returns:
            cache (UpdateCache): the products A and B.

        """
        x = as_data_matrix(x)
        _, partner = state.bank(which)
        data = x.values if which == "U" else x.values.T
        return cls(data @ partner.columns, partner.columns.T @ partner.columns, which)
