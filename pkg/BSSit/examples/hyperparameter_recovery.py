import numpy as np

from BSSit import EngineConfig, fit
from BSSit.datagen import SyntheticSpec, generate_synthetic, match_sources
from BSSit.priors import HalfNormal


def run_hyperparameter_recovery(M=300, N=300, scales=(1., 2., 4.), noise_sigma=0.01, n_seeds=10, seed=0,
                                max_em_iters=100, max_bcd_iters=20, verbose=1):
    """
    Consider synthetic data made of one rank-1 source per entry of `scales`: a unit-norm dense filter
    (half-normal, length M) times a sparse filter drawn from an exponential distribution of scale
    :math:`\\beta_k` (length N), plus Gaussian noise of standard deviation `noise_sigma`.

    This code fits the model with half-normal priors on the dense filters and exponential priors on the sparse
    ones, one hyperparameter per source, starting from the leading singular triplets of the data,
    and compares the estimated scales :math:`\\hat{\\beta}_k` to the generating ones.
    The estimate of a source is read on the recovered column whose sparse filter correlates best with the truth;
    with several seeds the median estimate is returned.

    Args:
        M (int): number of rows.
        N (int): number of columns.
        scales (tuple): generating scales :math:`\\beta_k`.
        noise_sigma (float): noise standard deviation.
        n_seeds (int): number of data sets (seeds seed, seed+1, ...).
        seed (int): first seed.
        max_em_iters (int): EM iterations.
        max_bcd_iters (int): BCD iterations.
        verbose (int): Level of information details to print.

                        - -1: No verbose at all.
                        - 0: This example's output.
                        - 1: This example's output + BSSit information.
                        - 2: This example's output + BSSit information + one line per iteration.

    Returns:
        estimated_scales (ndarray): the estimates :math:`\\hat{\\beta}_k`.
        true_scales (ndarray): the generating scales.

    Example:
        >>> estimated_scales, true_scales = run_hyperparameter_recovery(n_seeds=1, verbose=0)

    """
    true_scales = np.asarray(scales, dtype=float)
    estimates = list()
    for i in range(n_seeds):
        spec = SyntheticSpec(M=M, N=N, sources=[(HalfNormal(), beta) for beta in true_scales],
                             noise_sigma=noise_sigma, seed=seed + i)
        x, truth = generate_synthetic(spec)
        cfg = EngineConfig(n_sources=len(true_scales), priors_u="HalfNormal", priors_v="Exponential", init="svd",
                           max_em_iters=max_em_iters, max_bcd_iters=max_bcd_iters, seed=seed + i)
        state, _ = fit(x, cfg, verbose=max(verbose, 0))

        # The dense filters of the truth have unit norm, as the engine leaves them before every sparse update
        matches = match_sources(truth, state.sources(), target="temporal")
        estimates.append([state.v.priors[j].get_params()["beta"] for j in matches])
    estimated_scales = np.median(np.asarray(estimates), axis=0)

    if verbose != -1:
        print('*** Example file: recovery of per-source sparsity hyperparameters ***')
        for k, (estimate, beta) in enumerate(zip(estimated_scales, true_scales)):
            print('\tsource {}:\t estimated beta = {:.4f}\t true beta = {:.4f}'.format(k, estimate, beta))

    return estimated_scales, true_scales


if __name__ == "__main__":
    estimated_scales, true_scales = run_hyperparameter_recovery(verbose=1)
