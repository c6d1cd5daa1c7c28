import numpy as np

from BSSit.tools.exceptions import ShapeError


class DataMatrix(object):
    """
    A :class:`DataMatrix` is the dense real observation matrix :math:`X \\in \\mathbb{R}^{M \\times N}`
    to be decomposed. Values are stored row-major in 64-bit floats and are never modified after construction.

    Attributes:
        values (ndarray): read-only array of shape (M, N).
        rows (int): M.
        cols (int): N.

    Example:
        >>> x = DataMatrix(np.random.randn(30, 20))
        >>> x.rows, x.cols
        (30, 20)

    """

    def __init__(self, values):
        """

        Args:
            values (array_like): a 2-dimensional array of finite reals.

        Raises:
            ShapeError: if `values` is not a non-empty 2-dimensional array.
            ValueError: if some entry is NaN or infinite.

        """
        values = np.array(values, dtype=np.float64, order="C", copy=True)
        if values.ndim != 2:
            raise ShapeError("A DataMatrix must be 2-dimensional, got {} dimension(s)".format(values.ndim))
        if values.shape[0] < 1 or values.shape[1] < 1:
            raise ShapeError("A DataMatrix must have at least one row and one column, got {}".format(values.shape))
        if not np.all(np.isfinite(values)):
            raise ValueError("A DataMatrix must only contain finite values")

        values.setflags(write=False)
        self.values = values
        self.rows, self.cols = values.shape

    @property
    def shape(self):
        return self.rows, self.cols

    def squared_norm(self):
        """

        Returns:
            norm (float): the squared Frobenius norm of self.

        """
        return float(np.sum(self.values ** 2))

    def __eq__(self, other):
        return isinstance(other, DataMatrix) and np.array_equal(self.values, other.values)

    def __repr__(self):
        return "DataMatrix({}x{})".format(self.rows, self.cols)


def as_data_matrix(x):
    """
    Wrap `x` into a :class:`DataMatrix` unless it already is one.

    """
    if isinstance(x, DataMatrix):
        return x
    return DataMatrix(x)
