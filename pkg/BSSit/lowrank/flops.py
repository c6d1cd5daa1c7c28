"""
Floating point operation model of one EM iteration.

A sweep over the K columns of a factor of dimension d, the partner factor having dimension o, costs

    - 2doK for A (data times partner factor),
    - 2oK^2 for B (Gram matrix of the partner factor),
    - 2dK^2 for the K products of the updated factor with the columns of B,
    - 4dK for the remaining per-column vector operations.

The reduced path runs both sweeps on (M_R, N_R) and adds the one-time projection cost amortised over
`n_iterations` iterations. Lifting the reduced means back to full space is reported only on request,
since it is identical for every rank and does not depend on the number of sources per sweep.
"""

# Defaults of the amortisation and of the range finder
N_ITERATIONS = 250
OVERSAMPLE = 10
POWER_ITERATIONS = 1


def sweep_flops(d, o, K):
    """
    Cost of the likelihood parameters of all the columns of a d x K factor whose partner is o x K.

    """
    return 2 * d * o * K + 2 * o * K ** 2 + 2 * d * K ** 2 + 4 * d * K


def projection_flops(d, o, r, oversample=OVERSAMPLE, power_iterations=POWER_ITERATIONS):
    """
    Cost of a randomized range finder of rank `r` for the axis of dimension `d` of a d x o matrix,
    including the rotation by the singular vectors of the sketch and the reduced data matrix.
    Zero when `r` equals `d` (identity basis).

    """
    if r >= d:
        return 0
    L = min(r + oversample, d)
    sketch = 2 * d * o * L
    power = power_iterations * 4 * d * o * L
    orthonormalisation = (1 + power_iterations) * 2 * d * L ** 2
    projected = 2 * L * d * o
    svd = 4 * L * o * min(L, o)
    rotation = 2 * d * L * r
    reduced_data = 2 * r * L * o
    return sketch + power + orthonormalisation + projected + svd + rotation + reduced_data


def lift_flops(d, r, K):
    """
    Cost of mapping the K columns of a factor between full (d) and reduced (r) coordinates.

    """
    if r >= d:
        return 0
    return 2 * d * r * K


def estimate_flops(M, N, K, m_r=None, n_r=None, reduced=False,
                   oversample=OVERSAMPLE, power_iterations=POWER_ITERATIONS,
                   n_iterations=N_ITERATIONS, include_lift=False):
    """
    Floating point operations of one EM iteration.

    Args:
        M (int): number of rows of the data.
        N (int): number of columns of the data.
        K (int): number of sources.
        m_r (int, optional): reduced number of rows, M if None.
        n_r (int, optional): reduced number of columns, N if None.
        reduced (bool): if False, the cost of the full path is returned and the ranks are ignored.
        oversample (int): oversampling of the range finder.
        power_iterations (int): power iterations of the range finder.
        n_iterations (int): number of iterations the projection cost is amortised over.
        include_lift (bool): if True, add the cost of the maps between reduced and full coordinates.

    Returns:
        flops (int): the operation count.

    Raises:
        ValueError: if a dimension is not positive.

    """
    m_r = M if m_r is None else m_r
    n_r = N if n_r is None else n_r
    for name, value in (("M", M), ("N", N), ("K", K), ("m_r", m_r), ("n_r", n_r), ("n_iterations", n_iterations)):
        if value < 1:
            raise ValueError("{} must be positive, got {}".format(name, value))

    if not reduced:
        return sweep_flops(M, N, K) + sweep_flops(N, M, K)

    m_r, n_r = min(m_r, M), min(n_r, N)
    flops = sweep_flops(m_r, n_r, K) + sweep_flops(n_r, m_r, K)
    projections = projection_flops(M, N, m_r, oversample, power_iterations) \
        + projection_flops(N, M, n_r, oversample, power_iterations)
    flops += projections / n_iterations
    if include_lift:
        flops += 2 * (lift_flops(M, m_r, K) + lift_flops(N, n_r, K))
    return int(round(flops))


def reduction_ratio(M, N, K, m_r=None, n_r=None, **kwargs):
    """
    Relative saving :math:`1 - \\mathrm{reduced} / \\mathrm{full}`; negative when the overhead dominates.

    """
    full = estimate_flops(M, N, K)
    return 1. - estimate_flops(M, N, K, m_r, n_r, reduced=True, **kwargs) / full


def flops_grid(M, N, sources, reduced_rows, n_r=None, **kwargs):
    """
    Full and reduced costs on a grid of numbers of sources and reduced numbers of rows.
    Grid points with a reduced dimension smaller than the number of sources are skipped.

    Returns:
        rows (list): one dictionary per grid point with keys
                     K, m_r, n_r, full, reduced and reduction (in percent).

    """
    rows = list()
    for K in sources:
        for m_r in reduced_rows:
            columns = N if n_r is None else n_r
            if m_r < K or columns < K:
                continue
            full = estimate_flops(M, N, K)
            reduced = estimate_flops(M, N, K, m_r, columns, reduced=True, **kwargs)
            rows.append({"K": K, "m_r": m_r, "n_r": columns, "full": full, "reduced": reduced,
                         "reduction": 100. * (1. - reduced / full)})
    return rows
