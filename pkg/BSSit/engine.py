import time

import numpy as np

from BSSit.data_matrix import as_data_matrix
from BSSit.factor_bank import FactorBank
from BSSit.gaussian_likelihood import GaussianLikelihood
from BSSit.joint import neg_log_joint, residual, variance_explained
from BSSit.lowrank.flops import estimate_flops
from BSSit.lowrank.projection_pair import build_projection
from BSSit.lowrank.reduced_cache import ReducedCache, likelihood_params_reduced, neg_log_joint_reduced, \
    update_noise_precision_reduced
from BSSit.model_state import ModelState
from BSSit.run_report import RunReport
from BSSit.sampling.rng_handle import RngHandle
from BSSit.tools.exceptions import DeadSourceError, SupportViolationError
from BSSit.update_cache import UpdateCache

# Random streams of a run
SAMPLING_STREAM = 0
PROJECTION_STREAM = 1


def likelihood_params(cache, factor, alpha, k, threshold=1e-12):
    """
    Gaussian factor of the conditional posterior of column k, computed without forming the residual
    :math:`\\tilde{X}^{(k)} = X - U_{-k} V_{-k}^\\top`:

    .. math:: \\mu^{(k)} = \\frac{A_k - U B_k + U_k B_{k,k}}{B_{k,k}}, \\qquad \\sigma^{(k)} = \\frac{1}{\\sqrt{\\alpha B_{k,k}}}

    Args:
        cache (UpdateCache): the products A and B of the factor being updated.
        factor (FactorBank): current value of the factor being updated.
        alpha (float): noise precision.
        k (int): source index.
        threshold (float): dead source threshold on :math:`B_{k,k}`.

    Returns:
        lik (GaussianLikelihood): the Gaussian factor.

    Raises:
        DeadSourceError: if :math:`B_{k,k}` is not above `threshold`.

    """
    b_kk = cache.b[k, k]
    if not b_kk > threshold:
        raise DeadSourceError(cache.which, k, b_kk)
    columns = factor.columns
    mean = (cache.a[:, k] - columns @ cache.b[:, k] + columns[:, k] * b_kk) / b_kk
    return GaussianLikelihood(mean, 1. / np.sqrt(alpha * b_kk))


def update_noise_precision(x, state, alpha_min=1e-10, alpha_max=1e12):
    """
    Maximum likelihood noise precision given the current factors, :math:`\\alpha = MN / \\|X - UV^\\top\\|_F^2`,
    clipped to [alpha_min, alpha_max]. An exactly zero residual gives alpha_max.

    """
    x = as_data_matrix(x)
    error = float(np.sum(residual(x, state.u, state.v).values ** 2))
    if error <= 0:
        return alpha_max
    return float(np.clip(x.rows * x.cols / error, alpha_min, alpha_max))


def reinitialise_source(state, k, rng=None, reason="dead_source", **details):
    """
    Draw both columns of source k from their priors and log the event.

    """
    rng = state.rng if rng is None else rng
    for bank in (state.u, state.v):
        bank.columns[:, k] = bank.priors[k].draw(bank.dim, rng)
    return state.log_event(reason, source=k, **details)


def rescale_columns(state, which, threshold=1e-12, rng=None):
    """
    Normalise every column of factor `which` to unit Euclidean norm and multiply the matching column of the
    partner factor by the same norm, which leaves every source :math:`U_k V_k^\\top` unchanged.
    Columns with a norm below `threshold` are re-initialised instead.

    Example:
        With :math:`U_k = (3, 4)` and :math:`V_k = (1, 0)`, rescaling U gives :math:`U_k = (0.6, 0.8)` and
        :math:`V_k = (5, 0)`.

    """
    bank, partner = state.bank(which)
    norms = np.linalg.norm(bank.columns, axis=0)
    for k in range(bank.K):
        if norms[k] < threshold:
            reinitialise_source(state, k, rng, factor=which, norm=float(norms[k]))
        else:
            bank.columns[:, k] /= norms[k]
            partner.columns[:, k] *= norms[k]
    return state


def _build_cache(x, state, which, projection):
    if projection is None:
        return UpdateCache.from_state(x, state, which)
    return ReducedCache.from_state(projection, state, which)


def _column_likelihood(cache, bank, alpha, k, threshold, projection):
    if projection is None:
        return likelihood_params(cache, bank, alpha, k, threshold)
    return likelihood_params_reduced(projection, cache, alpha, k, threshold)


def _fit_hyperparameters(bank, k, shared):
    if not shared:
        bank.priors[k].fit_ml(bank.columns[:, k])
        return
    params = bank.priors[k].fit_ml(bank.columns)
    for prior in bank.priors:
        if not prior.fixed:
            prior.set_params(params)


def _sweep(x, state, which, sample, rng, shared_hyperparams, dead_source_threshold, rescale, column_callback,
           projection):
    bank, _ = state.bank(which)
    rng = state.rng if rng is None else rng
    cache = _build_cache(x, state, which, projection)

    for k in range(bank.K):
        prior = bank.priors[k]
        if sample:
            _fit_hyperparameters(bank, k, shared_hyperparams)

        try:
            lik = _column_likelihood(cache, bank, state.alpha, k, dead_source_threshold, projection)
        except DeadSourceError as error:
            reinitialise_source(state, k, rng, factor=which, value=float(error.value))
            cache = _build_cache(x, state, which, projection)
            continue

        if sample:
            bank.columns[:, k] = prior.posterior_sample(lik, rng, current=bank.columns[:, k])
        else:
            bank.columns[:, k] = prior.posterior_mode(lik)

        if projection is not None:
            cache.refresh_column(projection, bank, k)
        if column_callback is not None:
            column_callback(state, which, k)

    if rescale:
        rescale_columns(state, which, dead_source_threshold, rng)
    return state


def gibbs_sweep_factor(x, state, which, rng=None, shared_hyperparams=False, dead_source_threshold=1e-12,
                       rescale=True, column_callback=None, projection=None):
    """
    One blocked Gibbs sweep over the columns of factor `which`, in ascending order.
    For every column, the hyperparameters are updated with their maximum likelihood estimate (M-step),
    then the whole column is replaced by a sample of its conditional posterior (E-step).
    The columns are rescaled at the end of the sweep.

    Args:
        x (DataMatrix): the data (unused when `projection` is given).
        state (ModelState): the state, updated in place.
        which (str): 'U' or 'V'.
        rng (RngHandle, optional): random stream, `state.rng` by default.
        shared_hyperparams (bool): if True, every column takes the estimate fitted on the whole factor.
        dead_source_threshold (float): threshold of the dead source detection.
        rescale (bool): if False, the final rescaling is skipped.
        column_callback (callable, optional): called as `column_callback(state, which, k)` after every column update.
        projection (ProjectionPair, optional): if given, conditional posteriors are computed in reduced coordinates.

    Returns:
        state (ModelState): the updated state.

    """
    return _sweep(x, state, which, True, rng, shared_hyperparams, dead_source_threshold, rescale,
                  column_callback, projection)


def bcd_sweep_factor(x, state, which, dead_source_threshold=1e-12, rescale=False, column_callback=None,
                     projection=None):
    """
    One block coordinate descent sweep: same traversal as :func:`gibbs_sweep_factor`,
    but every column is set to the mode of its conditional posterior
    and neither the hyperparameters nor the noise precision are updated.
    Columns are not rescaled by default: under scale dependent priors with frozen hyperparameters,
    a rescaling changes the negative log-joint and would break its monotone decrease.

    """
    return _sweep(x, state, which, False, None, False, dead_source_threshold, rescale,
                  column_callback, projection)


def svd_factors(x, priors_u, priors_v, rng):
    """
    Initial factors built from the K leading singular triplets :math:`(s_k, a_k, b_k)` of the data.
    For a non-negative prior the singular vector is replaced by its positive part, the sign of the pair being
    chosen to keep the largest mass :math:`\\|a_k^+\\| \\|b_k^+\\|`, and both columns get the norm
    :math:`\\sqrt{s_k \\|a_k^+\\| \\|b_k^+\\|}`.
    Pairs with no mass left are drawn from the priors.

    Returns:
        u (ndarray): of shape (M, K).
        v (ndarray): of shape (N, K).

    """
    x = as_data_matrix(x)
    K = len(priors_u)
    left, singular, right = np.linalg.svd(x.values, full_matrices=False)
    u = np.empty((x.rows, K))
    v = np.empty((x.cols, K))

    def kept(vector, prior):
        return np.maximum(vector, 0.) if prior.non_negative else vector

    for k in range(K):
        mass, a, b = -1., None, None
        for sign in (1., -1.):
            a_sign, b_sign = kept(sign * left[:, k], priors_u[k]), kept(sign * right[k], priors_v[k])
            mass_sign = np.linalg.norm(a_sign) * np.linalg.norm(b_sign)
            if mass_sign > mass:
                mass, a, b = mass_sign, a_sign, b_sign
        if not singular[k] * mass > 0:
            u[:, k] = priors_u[k].draw(x.rows, rng)
            v[:, k] = priors_v[k].draw(x.cols, rng)
            continue
        norm = np.sqrt(singular[k] * mass)
        u[:, k] = norm * a / np.linalg.norm(a)
        v[:, k] = norm * b / np.linalg.norm(b)
    return u, v


def initialise_state(x, cfg):
    """
    Initial factors of `cfg.init`: drawn from the priors of `cfg` with their initial hyperparameters,
    or given by :func:`svd_factors`; :math:`\\alpha = 1`.

    Returns:
        state (ModelState): the initial state, with the sampling stream of seed `cfg.seed`.

    """
    x = as_data_matrix(x)
    rng = RngHandle(seed=cfg.seed, stream=SAMPLING_STREAM)
    priors_u = [prior.copy() for prior in cfg.priors_u]
    priors_v = [prior.copy() for prior in cfg.priors_v]
    if cfg.init == "svd":
        u, v = svd_factors(x, priors_u, priors_v, rng)
    else:
        u = np.column_stack([prior.draw(x.rows, rng) for prior in priors_u])
        v = np.column_stack([prior.draw(x.cols, rng) for prior in priors_v])
    return ModelState(FactorBank(u, priors_u, name="U"), FactorBank(v, priors_v, name="V"), alpha=1., rng=rng)


def _evaluate(x, state, projection):
    """
    Negative log-joint of the current state. Columns violating the support of their prior are re-initialised.

    """
    size = x.rows * x.cols
    for _ in range(2):
        try:
            if projection is None:
                return neg_log_joint(x, state)
            return neg_log_joint_reduced(projection, state, size)
        except SupportViolationError as error:
            for k in error.columns:
                reinitialise_source(state, k, reason="support_violation", factor=error.factor)
    raise AssertionError("Re-initialised sources still violate the support of their priors")


def fit(x, cfg, verbose=1):
    """
    Fit the factors, their hyperparameters and the noise precision.

    The EM phase repeats {noise precision M-step; Gibbs sweep of U; Gibbs sweep of V} until `cfg.max_em_iters`
    iterations or until the monitor changes by less than `cfg.tol` (relatively) over `cfg.convergence_window`
    iterations. The BCD phase then repeats {mode sweep of U; mode sweep of V} with frozen hyperparameters until
    `cfg.max_bcd_iters` iterations or a relative change of the negative log-joint below `cfg.tol`.

    Args:
        x (DataMatrix or array_like): the data.
        cfg (EngineConfig): the run configuration.
        verbose (int): level of information details to print.

                        - 0: no verbose at all
                        - 1: phase boundaries, convergence and events
                        - 2: one line per iteration

    Returns:
        state (ModelState): the final state.
        report (RunReport): the diagnostics of the run.

    Raises:
        ValueError: if the configuration does not fit the data.
        UserWarning: if the data are identically zero.

    """
    start = time.perf_counter()
    x = as_data_matrix(x)
    cfg.validate_for(x)
    if x.squared_norm() == 0:
        raise UserWarning("The data matrix is identically zero: there is no source to separate.")

    state = initialise_state(x, cfg)
    report = RunReport(cfg.to_dict())
    K = cfg.n_sources

    projection = None
    if cfg.use_lowrank:
        m_r, n_r = cfg.resolved_ranks(x.rows, x.cols)
        projection = build_projection(x, m_r, n_r, RngHandle(seed=cfg.seed, stream=PROJECTION_STREAM),
                                      oversample=cfg.oversample, power_iterations=cfg.power_iterations)
        for which, deficient in sorted(projection.rank_deficient.items()):
            if deficient:
                state.log_event("rank_deficient_projection", factor=which)
                if verbose:
                    print("\033[96m(BSSit) The data have a numerical rank below the reduced dimension of {};"
                          " the basis was completed at random.\033[0m".format(which))
        flop_count = estimate_flops(x.rows, x.cols, K, m_r, n_r, reduced=True,
                                    oversample=cfg.oversample, power_iterations=cfg.power_iterations)
    else:
        flop_count = estimate_flops(x.rows, x.cols, K)

    sweep_options = {"dead_source_threshold": cfg.dead_source_threshold, "projection": projection}
    printed_events = 0

    def print_new_events():
        nonlocal printed_events
        if verbose:
            for event in state.events[printed_events:]:
                print("(BSSit) Iteration {}: source {} re-initialised ({})".format(event["iteration"],
                                                                                  event.get("source"),
                                                                                  event["kind"]))
        printed_events = len(state.events)

    # EM phase
    if verbose:
        print("(BSSit) EM phase: {} source(s), data of shape {}x{}{}".format(
            K, x.rows, x.cols, "" if projection is None else
            ", reduced to {}x{}".format(projection.m_r, projection.n_r)))
    monitors = list()
    value = float("nan")
    for _ in range(cfg.max_em_iters):
        if projection is None:
            state.alpha = update_noise_precision(x, state, cfg.alpha_min, cfg.alpha_max)
        else:
            state.alpha = update_noise_precision_reduced(projection, state, x.rows * x.cols,
                                                         cfg.alpha_min, cfg.alpha_max)
        for which in ("U", "V"):
            gibbs_sweep_factor(x, state, which, shared_hyperparams=cfg.shared_hyperparams, **sweep_options)
        state.iteration += 1

        value = _evaluate(x, state, projection)
        state.monitor = -value
        monitors.append(state.monitor)
        report.record(state, "em", flop_count, value)
        print_new_events()
        if verbose >= 2:
            print("(BSSit) EM iteration {}: monitor = {:.8g}, alpha = {:.6g}".format(state.iteration,
                                                                                  state.monitor, state.alpha))

        window = cfg.convergence_window
        if len(monitors) > window and \
                abs(monitors[-1] - monitors[-1 - window]) <= cfg.tol * abs(monitors[-1 - window]):
            report.converged["em"] = True
            break

    if verbose:
        print("(BSSit) EM phase {} after {} iteration(s); alpha = {:.6g}".format(
            "converged" if report.converged["em"] else "stopped", report.em_iterations, state.alpha))

    # BCD phase
    if verbose:
        print("(BSSit) BCD phase")
    previous = value
    for _ in range(cfg.max_bcd_iters):
        for which in ("U", "V"):
            bcd_sweep_factor(x, state, which, **sweep_options)
        state.iteration += 1

        value = _evaluate(x, state, projection)
        state.monitor = -value
        report.record(state, "bcd", flop_count, value)
        print_new_events()
        if verbose >= 2:
            print("(BSSit) BCD iteration {}: negative log-joint = {:.10g}".format(state.iteration, value))

        if abs(previous - value) <= cfg.tol * abs(previous):
            report.converged["bcd"] = True
            break
        previous = value

    final = neg_log_joint(x, state)
    report.finalize(state, final, variance_explained(x, state), time.perf_counter() - start)
    if verbose:
        print("(BSSit) BCD phase {} after {} iteration(s); negative log-joint = {:.10g}".format(
            "converged" if report.converged["bcd"] else "stopped", report.bcd_iterations, final))
    return state, report
