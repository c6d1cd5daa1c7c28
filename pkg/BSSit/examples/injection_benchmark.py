from BSSit import EngineConfig, fit
from BSSit.datagen import SyntheticSpec, generate_synthetic, inject_ground_truth, model_score


def run_injection_benchmark(M=200, N=200, target_variances=(1e-4, 1e-3, 1e-2), n_background=3, n_cells=2,
                            n_runs=3, noise_sigma=0.05, seed=0, max_em_iters=80, max_bcd_iters=30, verbose=1):
    """
    Consider a synthetic background on which ground truth cells are injected with a prescribed elementwise variance
    :math:`\\sigma^2_{GT}`.

    For every value of :math:`\\sigma^2_{GT}`, this code fits the model `n_runs` times (seeds seed, seed+1, ...)
    with as many sources as background sources and cells, starting from the leading singular triplets of the
    data, and computes the recovery score: the mean over the cells of the median over the runs of the best
    absolute correlation between the cell and a recovered source.

    Args:
        M (int): number of rows.
        N (int): number of columns.
        target_variances (tuple): the values of :math:`\\sigma^2_{GT}`.
        n_background (int): number of sources of the background.
        n_cells (int): number of injected cells.
        n_runs (int): number of runs per variance.
        noise_sigma (float): noise standard deviation of the background.
        seed (int): seed of the background (the cells use seed + 1).
        max_em_iters (int): EM iterations.
        max_bcd_iters (int): BCD iterations.
        verbose (int): Level of information details to print.

                        - -1: No verbose at all.
                        - 0: This example's output.
                        - 1: This example's output + BSSit information.
                        - 2: This example's output + BSSit information + one line per iteration.

    Returns:
        scores (dict): the score of every target variance.

    Example:
        >>> scores = run_injection_benchmark(M=100, N=100, target_variances=(1e-2,), n_runs=1, verbose=-1)

    """
    background, _ = generate_synthetic(SyntheticSpec(M=M, N=N, sources=[("HalfNormal", 1.)] * n_background,
                                                     noise_sigma=noise_sigma, seed=seed))
    _, cells = generate_synthetic(SyntheticSpec(M=M, N=N, sources=[("HalfNormal", 1.)] * n_cells,
                                                noise_sigma=0., seed=seed + 1))

    scores = dict()
    for target_variance in target_variances:
        x, truth = inject_ground_truth(background, cells.true_sources, target_variance)
        runs = list()
        for i in range(n_runs):
            cfg = EngineConfig(n_sources=n_background + n_cells, priors_u="HalfNormal", priors_v="Exponential",
                               init="svd", max_em_iters=max_em_iters, max_bcd_iters=max_bcd_iters, seed=seed + i)
            state, _ = fit(x, cfg, verbose=max(verbose, 0))
            runs.append(state.sources())
        scores[target_variance] = model_score(truth, runs)

    if verbose != -1:
        print('*** Example file: recovery of injected ground truth cells ***')
        for target_variance, score in scores.items():
            print('\ttarget variance {:.3g}:\t score = {:.6f}'.format(target_variance, score))

    return scores


if __name__ == "__main__":
    scores = run_injection_benchmark(verbose=1)
