import numpy as np

from BSSit.sampling.truncation_region import TruncationRegion

# Floor of every maximum likelihood scale estimate
SCALE_MIN = 1e-12


class Prior(object):
    """
    A :class:`Prior` object encodes the prior distribution of the elements of one factor column,
    together with its hyperparameters :math:`\\theta`.

    Warnings:
        This class must be overwritten by a child class that encodes one family.
        In particular, the methods `_log_density`, `_fit`, `posterior_sample`, `posterior_mode` and `draw`
        must be overwritten. See the :class:`BSSit.priors` module.

    Attributes:
        family (str): the family identifier used in configurations and reports.
        param_names (tuple): ordered names of the hyperparameters.
        scale_names (tuple): the hyperparameters that are scales (floored at SCALE_MIN by the fits).
        default_params (dict): hyperparameters used when none are given.
        non_negative (bool): True if the support is [0, inf), False if it is the real line.
        proper (bool): False for the flat improper families.
        params (dict): current hyperparameters.
        fixed (bool): if True, `fit_ml` leaves the hyperparameters untouched.

    Example:
        >>> from BSSit.priors import Exponential
        >>> prior = Exponential(beta=2.)
        >>> prior.fit_ml(np.array([1., 3.]))
        {'beta': 2.0}

    """
    family = None
    param_names = ()
    scale_names = ()
    default_params = dict()
    non_negative = False
    proper = True

    def __init__(self, fixed=False, **params):
        """

        Args:
            fixed (bool): if True, the hyperparameters are handpicked and never re-estimated.
            **params: hyperparameters of the family, by name. Missing ones take their default value.

        Raises:
            TypeError: if an unknown hyperparameter is given.
            ValueError: if a hyperparameter is outside the domain of the family.

        """
        self.fixed = bool(fixed)
        self.params = dict(self.default_params)
        self.set_params(params)

    def get_params(self):
        """

        Returns:
            params (dict): a copy of the hyperparameters.

        """
        return dict(self.params)

    def set_params(self, params):
        """
        Replace (some of) the hyperparameters.

        Args:
            params (dict or sequence): values by name, or values ordered as `param_names`.

        Raises:
            TypeError: if an unknown hyperparameter is given.
            ValueError: if a hyperparameter is not positive and finite.

        """
        if params is None:
            return
        if not isinstance(params, dict):
            params = list(params)
            if len(params) != len(self.param_names):
                raise ValueError("{} expects {} hyperparameter(s), got {}".format(self.family,
                                                                                  len(self.param_names),
                                                                                  len(params)))
            params = dict(zip(self.param_names, params))

        for name, value in params.items():
            if name not in self.param_names:
                raise TypeError("{} has no hyperparameter named '{}'".format(self.family, name))
            value = float(value)
            if not (value > 0 and np.isfinite(value)):
                raise ValueError("Hyperparameter {} of {} must be positive and finite,"
                                 " got {}".format(name, self.family, value))
            self.params[name] = value

    def copy(self):
        """

        Returns:
            prior (Prior): an independent prior of the same family with the same hyperparameters.

        """
        return self.__class__(fixed=self.fixed, **self.params)

    def to_dict(self):
        """

        Returns:
            description (dict): family, hyperparameters and fixed flag, JSON serialisable.

        """
        return {"family": self.family, "params": self.get_params(), "fixed": self.fixed}

    def support(self, n):
        """

        Returns:
            region (TruncationRegion): the support of self, repeated `n` times.

        """
        if self.non_negative:
            return TruncationRegion.non_negative(n)
        return TruncationRegion(lower=np.full(n, -np.inf), upper=np.full(n, np.inf))

    def in_support(self, values):
        """

        Returns:
            inside (ndarray): boolean mask of the values lying in the support of self.

        """
        values = np.asarray(values, dtype=np.float64)
        if self.non_negative:
            return np.isfinite(values) & (values >= 0)
        return np.isfinite(values)

    def log_density(self, values):
        """
        Elementwise log-density of `values`.

        Returns:
            log_f (ndarray): log-densities, -inf outside the support.
                             Improper families return 0 inside their support.

        """
        values = np.atleast_1d(np.asarray(values, dtype=np.float64))
        log_f = np.full(values.shape, -np.inf)
        inside = self.in_support(values)
        log_f[inside] = self._log_density(values[inside])
        return log_f

    def _log_density(self, values):
        raise NotImplementedError("This method must be overwritten in children classes")

    def _grad_log_density(self, values):
        raise NotImplementedError("This method must be overwritten in children classes"
                                  " without closed form posterior mode")

    def log_likelihood(self, values, params=None):
        """
        Sum of the log-densities of `values`, under `params` if given or under the current hyperparameters.

        """
        if params is None:
            return float(np.sum(self.log_density(values)))
        other = self.copy()
        other.set_params(params)
        return float(np.sum(other.log_density(values)))

    def fit_ml(self, values, warm_start=None, max_iter=1, tol=0.):
        """
        Update the hyperparameters with their maximum likelihood estimate given `values`.

        Families with closed form estimators ignore `max_iter` and `tol`.
        The compound families run at most `max_iter` EM sweeps started from `warm_start`
        (or from the current hyperparameters), and stop earlier when the relative change of every
        hyperparameter is below `tol`. The returned estimate never has a lower likelihood than its starting point.

        Args:
            values (ndarray): observed elements, inside the support.
            warm_start (dict or sequence, optional): starting hyperparameters.
            max_iter (int): maximal number of EM sweeps.
            tol (float): relative tolerance on the hyperparameters.

        Returns:
            params (dict): the new hyperparameters (also stored in self).

        Raises:
            ValueError: if some value is not finite or lies outside the support.

        """
        values = np.ravel(np.asarray(values, dtype=np.float64))
        if not np.all(np.isfinite(values)):
            raise ValueError("fit_ml of {} received non-finite values".format(self.family))
        if not np.all(self.in_support(values)):
            raise ValueError("fit_ml of {} received values outside the support".format(self.family))

        if warm_start is not None:
            self.set_params(warm_start)
        if self.fixed or not self.param_names or values.shape[0] < 2:
            return self.get_params()

        params = self._fit(values, self.get_params(), max_iter, tol)
        for name in self.scale_names:
            params[name] = max(params[name], SCALE_MIN)
        self.set_params(params)
        return self.get_params()

    def _fit(self, values, params, max_iter, tol):
        raise NotImplementedError("This method must be overwritten in children classes")

    def posterior_sample(self, lik, rng, current=None):
        """
        Draw one sample per element from the conditional posterior
        :math:`p(u_i) \\propto \\mathcal{N}(u_i|\\mu_i, \\sigma^2) f(u_i|\\theta)`.

        Args:
            lik (GaussianLikelihood): the Gaussian factor.
            rng (RngHandle): random stream.
            current (ndarray, optional): values of the previous sweep, used by the compound families
                                         to draw their latent variables. Defaults to the likelihood means.

        Returns:
            values (ndarray): the samples.

        """
        raise NotImplementedError("This method must be overwritten in children classes")

    def posterior_mode(self, lik):
        """
        Elementwise argmax of the conditional posterior.

        """
        raise NotImplementedError("This method must be overwritten in children classes")

    def draw(self, n, rng):
        """
        Draw `n` i.i.d. values from self. Improper families draw from a fixed fallback.

        """
        raise NotImplementedError("This method must be overwritten in children classes")

    def __repr__(self):
        params = ", ".join("{}={:g}".format(name, self.params[name]) for name in self.param_names)
        return "{}({})".format(self.family, params)
