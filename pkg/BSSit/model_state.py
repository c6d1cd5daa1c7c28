import numpy as np

from BSSit.sampling.rng_handle import RngHandle
from BSSit.tools.exceptions import ShapeError


class Source(object):
    """
    A :class:`Source` is one rank-1 component :math:`S_k = U_k V_k^\\top` of a decomposition.

    Attributes:
        index (int): k.
        spatial (ndarray): the column :math:`U_k`.
        temporal (ndarray): the column :math:`V_k`.
        variance_explained (float): :math:`\\|U_k\\|^2 \\|V_k\\|^2 / \\|X\\|_F^2`, 0 when unknown.

    """

    def __init__(self, index, spatial, temporal, variance_explained=0.):
        self.index = int(index)
        self.spatial = np.array(spatial, dtype=np.float64)
        self.temporal = np.array(temporal, dtype=np.float64)
        self.variance_explained = float(variance_explained)

    def matrix(self):
        """

        Returns:
            source (ndarray): the outer product of the spatial and temporal filters.

        """
        return np.outer(self.spatial, self.temporal)

    def sparsity(self):
        """
        Log-ratio between the L1 and the L2 norms of the spatial and temporal filters.

        """
        return log_norm_ratio(self.spatial), log_norm_ratio(self.temporal)


def log_norm_ratio(values):
    """
    Sparsity diagnostic :math:`\\log(\\|u\\|_1 / \\|u\\|_2)`: 0 for a single non-zero entry,
    :math:`\\frac{1}{2}\\log n` for a constant vector of length n, and nan for the zero vector.

    """
    l2 = np.linalg.norm(values)
    if l2 == 0:
        return float("nan")
    return float(np.log(np.sum(np.abs(values)) / l2))


class ModelState(object):
    """
    A :class:`ModelState` holds everything an inference run updates: both factor banks with their
    hyperparameters, the noise precision :math:`\\alpha`, the random stream and the iteration counters.

    Attributes:
        u (FactorBank): spatial factor, M x K.
        v (FactorBank): temporal factor, N x K.
        alpha (float): noise precision.
        rng (RngHandle): random stream of the run.
        iteration (int): number of completed iterations.
        monitor (float): single-sample estimate of the expected complete data log-likelihood,
                         that is the opposite of the current negative log-joint.
        events (list): dictionaries describing re-initialisations and other notable events.

    """

    def __init__(self, u, v, alpha=1., rng=None, iteration=0, monitor=float("nan")):
        """

        Raises:
            ShapeError: if the two banks do not have the same number of sources.
            ValueError: if `alpha` is not positive and finite.

        """
        if u.K != v.K:
            raise ShapeError("Both factors must have the same number of sources, got {} and {}".format(u.K, v.K))
        alpha = float(alpha)
        if not (alpha > 0 and np.isfinite(alpha)):
            raise ValueError("The noise precision must be positive and finite, got {}".format(alpha))

        self.u = u
        self.v = v
        self.alpha = alpha
        self.rng = RngHandle() if rng is None else rng
        self.iteration = iteration
        self.monitor = monitor
        self.events = list()

    @property
    def K(self):
        return self.u.K

    def bank(self, which):
        """

        Args:
            which (str): 'U' or 'V'.

        Returns:
            bank, partner (FactorBank): the bank named `which` and the other one.

        """
        if which == "U":
            return self.u, self.v
        if which == "V":
            return self.v, self.u
        raise ValueError("which must be 'U' or 'V', got {}".format(which))

    def log_event(self, kind, **details):
        event = {"kind": kind, "iteration": self.iteration}
        event.update(details)
        self.events.append(event)
        return event

    def sources(self, x=None):
        """

        Args:
            x (DataMatrix, optional): data used to compute the explained variances.

        Returns:
            sources (list): one :class:`Source` per column.

        """
        energy = None if x is None else x.squared_norm()
        sources = list()
        for k in range(self.K):
            share = 0.
            if energy:
                share = np.sum(self.u.columns[:, k] ** 2) * np.sum(self.v.columns[:, k] ** 2) / energy
            sources.append(Source(k, self.u.columns[:, k], self.v.columns[:, k], share))
        return sources

    def copy(self):
        """

        Returns:
            state (ModelState): a deep copy of self, random stream included.

        """
        state = ModelState(self.u.copy(), self.v.copy(), self.alpha,
                           rng=RngHandle(self.rng.seed, self.rng.stream, self.rng.position),
                           iteration=self.iteration, monitor=self.monitor)
        state.events = [dict(event) for event in self.events]
        return state
