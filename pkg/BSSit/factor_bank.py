import numpy as np

from BSSit.prior import Prior
from BSSit.tools.exceptions import ShapeError


class FactorBank(object):
    """
    A :class:`FactorBank` is one factor matrix of the decomposition (U of size M x K or V of size N x K)
    together with the prior of each of its columns.

    Attributes:
        name (str): 'U' or 'V'.
        columns (ndarray): array of shape (dim, K).
        priors (list): K :class:`Prior` objects, one per column.
        dim (int): number of rows.
        K (int): number of sources.

    A single prior is broadcast to every column as independent copies,
    so that hyperparameters are then fitted per column.

    Example:
        >>> from BSSit.priors import Exponential
        >>> bank = FactorBank(np.ones((10, 2)), Exponential(), name="V")
        >>> bank.priors[0] is bank.priors[1]
        False

    """

    def __init__(self, columns, priors, name="U"):
        """

        Args:
            columns (array_like): array of shape (dim, K).
            priors (Prior or list): one prior, or K priors.
            name (str): label used in reports and errors.

        Raises:
            ShapeError: if K < 1, K > dim, or if the number of priors is not K.
            TypeError: if some prior is not a :class:`Prior`.
            ValueError: if a column assigned a non-negative prior contains negative values.

        """
        columns = np.array(columns, dtype=np.float64, order="C", copy=True)
        if columns.ndim == 1:
            columns = columns[:, None]
        if columns.ndim != 2:
            raise ShapeError("Factor {} must be 2-dimensional".format(name))
        dim, K = columns.shape
        if K < 1 or K > dim:
            raise ShapeError("Factor {} must satisfy 1 <= K <= dim, got K={} and dim={}".format(name, K, dim))
        if not np.all(np.isfinite(columns)):
            raise ValueError("Factor {} must only contain finite values".format(name))

        if isinstance(priors, Prior):
            priors = [priors.copy() for _ in range(K)]
        priors = list(priors)
        if len(priors) != K:
            raise ShapeError("Factor {} has {} columns but {} priors".format(name, K, len(priors)))
        for prior in priors:
            if not isinstance(prior, Prior):
                raise TypeError("Priors must be Prior objects, got {}".format(type(prior)))
        if len(set(map(id, priors))) != K:
            priors = [prior.copy() for prior in priors]

        self.name = name
        self.columns = columns
        self.priors = priors
        self.dim, self.K = dim, K

        negative = self.support_violations()
        if negative:
            raise ValueError("Columns {} of factor {} have non-negative priors"
                             " but contain negative values".format(negative, name))

    def support_violations(self):
        """

        Returns:
            columns (list): indices of the columns with values outside the support of their prior.

        """
        return [k for k in range(self.K) if not np.all(self.priors[k].in_support(self.columns[:, k]))]

    def copy(self):
        """

        Returns:
            bank (FactorBank): a deep copy of self.

        """
        return FactorBank(self.columns, [prior.copy() for prior in self.priors], name=self.name)

    def hyperparameters(self):
        """

        Returns:
            params (list): the hyperparameters of every column.

        """
        return [prior.get_params() for prior in self.priors]

    def families(self):
        return [prior.family for prior in self.priors]

    def __repr__(self):
        return "FactorBank({}: {}x{})".format(self.name, self.dim, self.K)
