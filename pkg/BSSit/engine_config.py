import numpy as np

from BSSit.prior import Prior
from BSSit.priors import make_prior, prior_from_dict

INIT_METHODS = ("prior", "svd")


def _as_prior_list(priors, n_sources, factor):
    """
    Normalise a prior declaration into a list of `n_sources` independent priors.
    A declaration is a :class:`Prior`, a family name, a dictionary as produced by :meth:`Prior.to_dict`,
    or a list of K of those.

    """
    if isinstance(priors, (Prior, str, dict)):
        priors = [priors] * n_sources
    priors = list(priors)
    if len(priors) == 1:
        priors = priors * n_sources
    if len(priors) != n_sources:
        raise ValueError("{} priors given for factor {} with {} sources".format(len(priors), factor, n_sources))

    result = list()
    for prior in priors:
        if isinstance(prior, Prior):
            result.append(prior.copy())
        elif isinstance(prior, str):
            result.append(make_prior(prior))
        elif isinstance(prior, dict):
            result.append(prior_from_dict(prior))
        else:
            raise TypeError("Cannot build a prior from {}".format(type(prior)))
    return result


class EngineConfig(object):
    """
    An :class:`EngineConfig` gathers every setting of one inference run.

    Attributes:
        n_sources (int): number of sources K.
        priors_u (list): K priors of the columns of U.
        priors_v (list): K priors of the columns of V.
        max_em_iters (int): maximal number of EM iterations.
        max_bcd_iters (int): maximal number of BCD iterations.
        tol (float): relative tolerance of both convergence tests.
        convergence_window (int): lag (in EM iterations) of the monitor comparison.
        seed (int): seed of the random streams.
        dead_source_threshold (float): below this squared norm (or norm) a source is re-initialised.
        alpha_min (float): floor of the noise precision.
        alpha_max (float): cap of the noise precision.
        shared_hyperparams (bool): if True, the columns of a factor share one hyperparameter fit.
        use_lowrank (bool): if True, conditional posteriors are computed in randomly projected coordinates.
        ranks (tuple): (M_R, N_R), the reduced dimensions. None entries mean no reduction along that axis.
        oversample (int): oversampling of the range finder.
        power_iterations (int): power iterations of the range finder.
        init (str): initial factors, drawn from the priors ('prior') or built from the leading singular
                    triplets of the data ('svd').

    Example:
        >>> cfg = EngineConfig(n_sources=3, priors_u="Normal", priors_v="Exponential", seed=7)
        >>> EngineConfig.from_dict(cfg.to_dict()).to_dict() == cfg.to_dict()
        True

    """

    def __init__(self,
                 n_sources,
                 priors_u="Normal",
                 priors_v="Exponential",
                 max_em_iters=200,
                 max_bcd_iters=50,
                 tol=1e-5,
                 convergence_window=10,
                 seed=0,
                 dead_source_threshold=1e-12,
                 alpha_min=1e-10,
                 alpha_max=1e12,
                 shared_hyperparams=False,
                 use_lowrank=False,
                 ranks=None,
                 oversample=10,
                 power_iterations=1,
                 init="prior"):
        """

        Raises:
            ValueError: if a count is smaller than 1, a tolerance or a bound is not positive,
                        or if shared hyperparameters are requested for columns of different families.

        """
        self.n_sources = int(n_sources)
        if self.n_sources < 1:
            raise ValueError("n_sources must be at least 1, got {}".format(n_sources))
        self.priors_u = _as_prior_list(priors_u, self.n_sources, "U")
        self.priors_v = _as_prior_list(priors_v, self.n_sources, "V")

        self.max_em_iters = int(max_em_iters)
        self.max_bcd_iters = int(max_bcd_iters)
        self.convergence_window = int(convergence_window)
        for name in ("max_em_iters", "max_bcd_iters", "convergence_window"):
            if getattr(self, name) < 1:
                raise ValueError("{} must be at least 1, got {}".format(name, getattr(self, name)))

        self.tol = float(tol)
        self.dead_source_threshold = float(dead_source_threshold)
        self.alpha_min = float(alpha_min)
        self.alpha_max = float(alpha_max)
        for name in ("tol", "dead_source_threshold", "alpha_min", "alpha_max"):
            if not getattr(self, name) > 0:
                raise ValueError("{} must be positive, got {}".format(name, getattr(self, name)))
        if self.alpha_min >= self.alpha_max:
            raise ValueError("alpha_min must be smaller than alpha_max")

        self.seed = int(seed)
        self.shared_hyperparams = bool(shared_hyperparams)
        if self.shared_hyperparams:
            for factor, priors in (("U", self.priors_u), ("V", self.priors_v)):
                if len(set(prior.family for prior in priors)) > 1:
                    raise ValueError("Shared hyperparameters require a single prior family per factor,"
                                     " got {} for {}".format(sorted(set(p.family for p in priors)), factor))

        self.use_lowrank = bool(use_lowrank)
        if ranks is None:
            ranks = (None, None)
        elif np.isscalar(ranks):
            ranks = (ranks, None)
        ranks = tuple(None if r is None else int(r) for r in ranks)
        if len(ranks) != 2:
            raise ValueError("ranks must be (M_R, N_R), got {}".format(ranks))
        self.ranks = ranks
        self.oversample = int(oversample)
        self.power_iterations = int(power_iterations)
        if self.oversample < 0 or self.power_iterations < 0:
            raise ValueError("oversample and power_iterations must be non-negative")

        self.init = str(init)
        if self.init not in INIT_METHODS:
            raise ValueError("init must be one of {}, got '{}'".format(INIT_METHODS, init))

    def resolved_ranks(self, rows, cols):
        """

        Returns:
            m_r, n_r (int): the reduced dimensions for data of shape (rows, cols).

        """
        m_r, n_r = self.ranks
        return (rows if m_r is None else m_r), (cols if n_r is None else n_r)

    def validate_for(self, x):
        """
        Check that self can be run on the data `x`.

        Raises:
            ValueError: if K > min(M, N), or if the reduced dimensions are not in [K, M] and [K, N].

        """
        if self.n_sources > min(x.rows, x.cols):
            raise ValueError("The number of sources ({}) exceeds min(M, N) = {}".format(self.n_sources,
                                                                                      min(x.rows, x.cols)))
        if self.use_lowrank:
            m_r, n_r = self.resolved_ranks(x.rows, x.cols)
            if not self.n_sources <= m_r <= x.rows:
                raise ValueError("M_R = {} must lie in [K, M] = [{}, {}]".format(m_r, self.n_sources, x.rows))
            if not self.n_sources <= n_r <= x.cols:
                raise ValueError("N_R = {} must lie in [K, N] = [{}, {}]".format(n_r, self.n_sources, x.cols))

    def to_dict(self):
        """

        Returns:
            config (dict): every setting, defaults included, JSON serialisable.

        """
        return {"n_sources": self.n_sources,
                "priors_u": [prior.to_dict() for prior in self.priors_u],
                "priors_v": [prior.to_dict() for prior in self.priors_v],
                "max_em_iters": self.max_em_iters,
                "max_bcd_iters": self.max_bcd_iters,
                "tol": self.tol,
                "convergence_window": self.convergence_window,
                "seed": self.seed,
                "dead_source_threshold": self.dead_source_threshold,
                "alpha_min": self.alpha_min,
                "alpha_max": self.alpha_max,
                "shared_hyperparams": self.shared_hyperparams,
                "use_lowrank": self.use_lowrank,
                "ranks": list(self.ranks),
                "oversample": self.oversample,
                "power_iterations": self.power_iterations,
                "init": self.init,
                }

    @classmethod
    def from_dict(cls, config):
        """
        Inverse of :meth:`to_dict`.

        Raises:
            TypeError: if `config` contains an unknown key.

        """
        return cls(**config)
