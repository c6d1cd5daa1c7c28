import numpy as np

from BSSit import EngineConfig, fit
from BSSit.datagen import SyntheticSpec, generate_synthetic, match_sources, pearson
from BSSit.priors import HalfNormal


def run_weak_source_separation(M=200, N=200, scales=(4., 4., 0.5), noise_sigma=0.08, n_seeds=10, seed=0,
                               max_em_iters=100, max_bcd_iters=30, verbose=1):
    """
    Consider synthetic data in which the last source is much weaker than the others.

    This code fits the model twice, once with one hyperparameter per column of each factor and once with a single
    hyperparameter shared by all the columns of a factor, and returns the correlation between the weakest source
    and its best recovered match in both cases. Sharing gives the weak source the prior of the strong ones,
    which degrades its reconstruction. With several seeds the median correlations are returned.

    Args:
        M (int): number of rows.
        N (int): number of columns.
        scales (tuple): generating scales, the weak source being the one with the smallest scale.
        noise_sigma (float): noise standard deviation.
        n_seeds (int): number of data sets (seeds seed, seed+1, ...).
        seed (int): first seed of the data and of the runs.
        max_em_iters (int): EM iterations.
        max_bcd_iters (int): BCD iterations.
        verbose (int): Level of information details to print.

                        - -1: No verbose at all.
                        - 0: This example's output.
                        - 1: This example's output + BSSit information.
                        - 2: This example's output + BSSit information + one line per iteration.

    Returns:
        per_source_correlation (float): correlation of the weak source with per-source hyperparameters.
        shared_correlation (float): correlation of the weak source with shared hyperparameters.

    Example:
        >>> per_source_correlation, shared_correlation = run_weak_source_separation(n_seeds=1, verbose=0)

    """
    weak = min(range(len(scales)), key=lambda k: scales[k])
    correlations = list()
    for i in range(n_seeds):
        spec = SyntheticSpec(M=M, N=N, sources=[(HalfNormal(), beta) for beta in scales], noise_sigma=noise_sigma,
                             seed=seed + i)
        x, truth = generate_synthetic(spec)

        pair = list()
        for shared in (False, True):
            cfg = EngineConfig(n_sources=len(scales), priors_u="HalfNormal", priors_v="Exponential", init="svd",
                               max_em_iters=max_em_iters, max_bcd_iters=max_bcd_iters, seed=seed + i,
                               shared_hyperparams=shared)
            state, _ = fit(x, cfg, verbose=max(verbose, 0))
            recovered = state.sources()
            match = match_sources(truth, recovered, target="source")[weak]
            pair.append(abs(pearson(truth.true_sources[weak].matrix(), recovered[match].matrix())))
        correlations.append(pair)
    per_source_correlation, shared_correlation = np.median(np.asarray(correlations), axis=0)

    if verbose != -1:
        print('*** Example file: separation of a weak source ***')
        print('\tPer-source hyperparameters:\t correlation = {:.6f}'.format(per_source_correlation))
        print('\tShared hyperparameters:\t\t correlation = {:.6f}'.format(shared_correlation))

    return float(per_source_correlation), float(shared_correlation)


if __name__ == "__main__":
    per_source_correlation, shared_correlation = run_weak_source_separation(verbose=1)
