import numpy as np

from BSSit import EngineConfig, fit, reconstruct
from BSSit.datagen import SyntheticSpec, generate_synthetic


def run_lowrank_accuracy(M=300, N=60, n_sources=3, reduced_rows=(3, 6, 15, 30), noise_sigma=0.01, n_seeds=1,
                         seed=0, max_em_iters=50, max_bcd_iters=20, verbose=1):
    """
    Consider synthetic data with `n_sources` sources and the model fitted in randomly projected coordinates,
    the rows being reduced to :math:`M_R` dimensions.

    This code returns, for every :math:`M_R`, the relative reconstruction error
    :math:`\\|X - UV^\\top\\|_F^2 / \\|X\\|_F^2` of the fitted factors (median over the seeds),
    which shows the accuracy side of the trade-off whose cost side is computed by
    :func:`BSSit.examples.run_flops_tradeoff`.

    Args:
        M (int): number of rows.
        N (int): number of columns.
        n_sources (int): number of sources of the data and of the model.
        reduced_rows (tuple): values of :math:`M_R`, each in [n_sources, M].
        noise_sigma (float): noise standard deviation.
        n_seeds (int): number of data sets.
        seed (int): first seed.
        max_em_iters (int): EM iterations.
        max_bcd_iters (int): BCD iterations.
        verbose (int): Level of information details to print.

                        - -1: No verbose at all.
                        - 0: This example's output.
                        - 1: This example's output + BSSit information.
                        - 2: This example's output + BSSit information + one line per iteration.

    Returns:
        errors (list): the relative reconstruction error of every :math:`M_R`.

    Example:
        >>> errors = run_lowrank_accuracy(M=100, N=30, reduced_rows=(3, 30), verbose=-1)

    """
    errors = np.zeros((n_seeds, len(reduced_rows)))
    for i in range(n_seeds):
        spec = SyntheticSpec(M=M, N=N, sources=[("Normal", 1.)] * n_sources, noise_sigma=noise_sigma, seed=seed + i)
        x, _ = generate_synthetic(spec)
        for j, m_r in enumerate(reduced_rows):
            cfg = EngineConfig(n_sources=n_sources, priors_u="Normal", priors_v="Exponential",
                               max_em_iters=max_em_iters, max_bcd_iters=max_bcd_iters, seed=seed + i,
                               use_lowrank=True, ranks=(m_r, None))
            state, _ = fit(x, cfg, verbose=max(verbose, 0))
            error = x.values - reconstruct(state.u, state.v).values
            errors[i, j] = np.sum(error ** 2) / x.squared_norm()
    errors = list(np.median(errors, axis=0))

    if verbose != -1:
        print('*** Example file: accuracy of the fit in randomly projected coordinates ***')
        for m_r, error in zip(reduced_rows, errors):
            print('\tM_R = {}:\t relative reconstruction error = {:.6g}'.format(m_r, error))

    return errors


if __name__ == "__main__":
    errors = run_lowrank_accuracy(verbose=1)
