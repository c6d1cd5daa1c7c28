import numpy as np

from BSSit.data_matrix import DataMatrix, as_data_matrix
from BSSit.datagen.ground_truth import GroundTruth
from BSSit.model_state import Source
from BSSit.tools.exceptions import ShapeError


def inject_ground_truth(background, cells, target_variance):
    """
    Superimpose ground truth cells on a background:
    :math:`X_{\\sigma^2_{GT}} = \\sum_k c_k S_k + X_{in}` with :math:`c_k = \\sqrt{\\sigma^2_{GT} / \\mathrm{var}(S_k)}`,
    so that every injected cell has elementwise variance :math:`\\sigma^2_{GT}`.

    Args:
        background (DataMatrix): the matrix :math:`X_{in}`.
        cells (list): :class:`Source` objects with filters of lengths M and N.
        target_variance (float): :math:`\\sigma^2_{GT} \\geq 0`.

    Returns:
        x (DataMatrix): the augmented matrix.
        truth (GroundTruth): the scaled cells, their coefficients and the background.

    Raises:
        ShapeError: if a cell does not match the shape of the background.
        ValueError: if a cell has zero variance or `target_variance` is negative.

    """
    background = as_data_matrix(background)
    target_variance = float(target_variance)
    if target_variance < 0:
        raise ValueError("The target variance must be non-negative, got {}".format(target_variance))

    values = background.values.copy()
    scaled, scales = list(), list()
    for cell in cells:
        if cell.spatial.shape[0] != background.rows or cell.temporal.shape[0] != background.cols:
            raise ShapeError("Cell {} of shape {}x{} does not match the background {}".format(
                cell.index, cell.spatial.shape[0], cell.temporal.shape[0], background.shape))
        variance = np.var(cell.matrix())
        if not variance > 0:
            raise ValueError("Cell {} has zero variance and cannot be scaled".format(cell.index))

        c = np.sqrt(target_variance / variance)
        injected = Source(cell.index, c * cell.spatial, cell.temporal)
        values += injected.matrix()
        scaled.append(injected)
        scales.append(c)

    truth = GroundTruth(scaled, noise_sigma=0., target_variance=target_variance, scales=scales, background=background)
    return DataMatrix(values), truth
