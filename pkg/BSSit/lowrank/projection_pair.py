import numpy as np

from BSSit.data_matrix import as_data_matrix

# Singular values below this fraction of the largest one are treated as zero
RANK_TOLERANCE = 1e-10


def orthonormal_completion(basis, n_columns, rng):
    """
    Extend the orthonormal columns `basis` (d x r) with `n_columns` random orthonormal columns
    orthogonal to them.

    """
    d = basis.shape[0]
    completion = rng.standard_normal(d * n_columns).reshape(d, n_columns)

    # Two passes of projection for numerical orthogonality
    for _ in range(2):
        completion -= basis @ (basis.T @ completion)
        completion, _ = np.linalg.qr(completion)
    return np.hstack([basis, completion])


def range_finder(data, rank, oversample, power_iterations, rng):
    """
    Randomized range finder of a d x o matrix: an orthonormal d x rank basis approximating its dominant left
    singular subspace.

    The sketch :math:`Y = X\\Omega` (Gaussian :math:`\\Omega` with rank + oversample columns) is orthonormalised,
    refined by power iterations, and rotated by the singular vectors of :math:`Q^\\top X` so that
    its first `rank` columns span the best subspace available in the sketch.

    Args:
        data (ndarray): d x o matrix.
        rank (int): number of returned columns, at most d.
        oversample (int): additional sketch columns.
        power_iterations (int): number of power iterations.
        rng (RngHandle): random stream.

    Returns:
        basis (ndarray): d x rank orthonormal matrix.
        rank_deficient (bool): True if the sketch had numerical rank below `rank`
                               and the basis was completed at random.

    References:
        `[1] N. Halko, P.-G. Martinsson, J. Tropp (2011).
        Finding structure with randomness: probabilistic algorithms for constructing approximate matrix
        decompositions. SIAM Review, 53(2), 217-288.
        <https://arxiv.org/abs/0909.4061>`_

    """
    d, o = data.shape
    if rank >= d:
        return np.eye(d), False

    width = min(rank + oversample, d)
    omega = rng.standard_normal(o * width).reshape(o, width)
    q, _ = np.linalg.qr(data @ omega)
    for _ in range(power_iterations):
        z, _ = np.linalg.qr(data.T @ q)
        q, _ = np.linalg.qr(data @ z)

    left, singular_values, _ = np.linalg.svd(q.T @ data, full_matrices=False)
    if singular_values.size == 0 or singular_values[0] == 0:
        numerical_rank = 0
    else:
        numerical_rank = int(np.sum(singular_values > RANK_TOLERANCE * singular_values[0]))
    kept = min(numerical_rank, rank)
    basis = q @ left[:, :kept]

    if kept < rank:
        return orthonormal_completion(basis, rank - kept, rng), True
    return basis, False


class ProjectionPair(object):
    """
    A :class:`ProjectionPair` stores the orthonormal bases :math:`Q^{(U)}` (M x M_R) and :math:`Q^{(V)}` (N x N_R)
    of a randomly projected model, and the reduced data :math:`X^{(R)} = Q^{(U)\\top} X Q^{(V)}`.
    It is built once per run and only read afterwards.

    Attributes:
        q_u (ndarray): M x M_R orthonormal matrix.
        q_v (ndarray): N x N_R orthonormal matrix.
        x_reduced (ndarray): M_R x N_R reduced data.
        data_energy (float): :math:`\\|X\\|_F^2`, kept to account for the energy outside the projected subspace.
        rank_deficient (dict): {'U': bool, 'V': bool}, True if a basis was completed at random.

    """

    def __init__(self, q_u, q_v, x_reduced, data_energy, rank_deficient=None):
        self.q_u = q_u
        self.q_v = q_v
        self.x_reduced = x_reduced
        self.data_energy = float(data_energy)
        self.rank_deficient = rank_deficient or {"U": False, "V": False}
        for array in (self.q_u, self.q_v, self.x_reduced):
            array.setflags(write=False)

    @property
    def m_r(self):
        return self.q_u.shape[1]

    @property
    def n_r(self):
        return self.q_v.shape[1]

    @property
    def discarded_energy(self):
        """
        Energy of the data outside the projected subspace, :math:`\\|X\\|_F^2 - \\|X^{(R)}\\|_F^2`, clipped at 0.

        """
        return max(self.data_energy - float(np.sum(self.x_reduced ** 2)), 0.)

    def basis(self, which):
        return self.q_u if which == "U" else self.q_v


def build_projection(x, m_r, n_r, rng, oversample=10, power_iterations=1):
    """
    Build the projections of a low-rank run.

    Args:
        x (DataMatrix): the data.
        m_r (int): reduced number of rows; M gives the identity basis.
        n_r (int): reduced number of columns; N gives the identity basis.
        rng (RngHandle): random stream of the sketches.
        oversample (int): oversampling of the range finders.
        power_iterations (int): power iterations of the range finders.

    Returns:
        pp (ProjectionPair): the bases and the reduced data.

    Raises:
        ValueError: if a reduced dimension is not in [1, M] (resp. [1, N]).

    """
    x = as_data_matrix(x)
    if not 1 <= m_r <= x.rows or not 1 <= n_r <= x.cols:
        raise ValueError("Reduced dimensions ({}, {}) must lie within the data shape {}".format(m_r, n_r, x.shape))

    q_u, deficient_u = range_finder(x.values, m_r, oversample, power_iterations, rng)
    q_v, deficient_v = range_finder(x.values.T, n_r, oversample, power_iterations, rng)
    x_reduced = q_u.T @ x.values @ q_v
    return ProjectionPair(q_u, q_v, x_reduced, x.squared_norm(), {"U": deficient_u, "V": deficient_v})
