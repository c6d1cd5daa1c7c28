from BSSit.lowrank import flops_grid, reduction_ratio


def run_flops_tradeoff(M=16384, N=500, sources=(10, 50, 100), reduced_rows=(100, 250, 500, 1000), verbose=1):
    """
    Compare the operation counts of an iteration with and without random projection of the data rows,
    on a grid of numbers of sources K and reduced dimensions :math:`M_R`.
    The projection cost is amortised over a typical run.

    Args:
        M (int): number of rows.
        N (int): number of columns.
        sources (tuple): values of K.
        reduced_rows (tuple): values of :math:`M_R`.
        verbose (int): Level of information details to print.

                        - -1: No verbose at all.
                        - 0 and above: This example's output.

    Returns:
        rows (list): one dictionary per grid point (K, m_r, n_r, full, reduced, reduction).
        reduction (float): reduction ratio at the largest K and :math:`M_R` = N.

    Example:
        >>> rows, reduction = run_flops_tradeoff(M=16384, N=500, sources=(100,), reduced_rows=(500,), verbose=-1)
        >>> round(100 * reduction, 2) >= 90
        True

    """
    rows = flops_grid(M, N, sources, reduced_rows)
    K = max(sources)
    reduction = reduction_ratio(M, N, K, m_r=N)

    if verbose != -1:
        print('*** Example file: operation counts with random projections ***')
        for row in rows:
            print('\tK = {K}, M_R = {m_r}:\t full = {full:.4g}\t reduced = {reduced:.4g}\t'
                  ' reduction = {reduction:.2f}%'.format(**row))
        print('\tM = {}, N = {}, K = {}, M_R = {}:\t reduction = {:.2f}%'.format(M, N, K, N, 100 * reduction))

    return rows, reduction


if __name__ == "__main__":
    rows, reduction = run_flops_tradeoff(verbose=1)
