import numpy as np


class TruncationRegion(object):
    """
    A :class:`TruncationRegion` encodes per-element intervals [lower, upper] on which normal draws are restricted.
    Infinite bounds are accepted.

    Attributes:
        lower (ndarray): lower bounds, possibly -np.inf.
        upper (ndarray): upper bounds, possibly np.inf.

    Example:
        >>> non_negative = TruncationRegion.non_negative(10)
        >>> interval = TruncationRegion(lower=-1., upper=2.)

    """

    def __init__(self, lower=-np.inf, upper=np.inf):
        """

        Args:
            lower (float or ndarray): lower bound(s).
            upper (float or ndarray): upper bound(s).

        Raises:
            ValueError: if some lower bound is not strictly smaller than its upper bound.

        """
        self.lower, self.upper = np.broadcast_arrays(np.asarray(lower, dtype=np.float64),
                                                     np.asarray(upper, dtype=np.float64))
        if np.any(np.isnan(self.lower)) or np.any(np.isnan(self.upper)):
            raise ValueError("Truncation bounds must not be NaN")
        if np.any(self.lower >= self.upper):
            raise ValueError("Truncation regions must satisfy lower < upper")

    @classmethod
    def non_negative(cls, n=1):
        """
        The region [0, inf) repeated `n` times.

        """
        return cls(lower=np.zeros(n), upper=np.full(n, np.inf))

    def broadcast_to(self, n):
        """

        Returns:
            lower, upper (ndarray): bounds broadcast to length `n`.

        """
        return np.broadcast_to(self.lower, (n,)), np.broadcast_to(self.upper, (n,))

    def contains(self, values):
        """

        Returns:
            inside (ndarray): boolean mask of values lying in the region.

        """
        return (values >= self.lower) & (values <= self.upper)
