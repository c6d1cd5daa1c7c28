from .double_lomax import DoubleLomax
from .exponential import Exponential
from .half_normal import HalfNormal
from .half_t import HalfT
from .laplace import Laplace
from .lomax import Lomax
from .nonneg_uniform import NonNegUniform
from .normal import Normal
from .student_t import StudentT
from .uniform import Uniform

PRIOR_FAMILIES = {prior_class.family: prior_class for prior_class in (Uniform, NonNegUniform,
                                                                      Normal, HalfNormal,
                                                                      Laplace, Exponential,
                                                                      StudentT, HalfT,
                                                                      DoubleLomax, Lomax)}


def make_prior(family, params=None, fixed=False):
    """
    Instantiate a prior from its family identifier.

    Args:
        family (str): one of the keys of PRIOR_FAMILIES.
        params (dict or sequence, optional): hyperparameters, defaults of the family otherwise.
        fixed (bool): if True, the hyperparameters are never re-estimated.

    Returns:
        prior (Prior): the new prior.

    Raises:
        ValueError: if `family` is unknown.

    Example:
        >>> make_prior("Lomax", {"beta": 2., "a": 3.})
        Lomax(beta=2, a=3)

    """
    if family not in PRIOR_FAMILIES:
        raise ValueError("Unknown prior family '{}'. Available families: {}".format(family,
                                                                                  ", ".join(PRIOR_FAMILIES)))
    prior = PRIOR_FAMILIES[family](fixed=fixed)
    prior.set_params(params)
    return prior


def prior_from_dict(description):
    """
    Inverse of :meth:`Prior.to_dict`. A bare family name is accepted as well.

    """
    if isinstance(description, str):
        return make_prior(description)
    return make_prior(description["family"], description.get("params"), description.get("fixed", False))


__all__ = ['double_lomax', 'DoubleLomax',
           'exponential', 'Exponential',
           'half_normal', 'HalfNormal',
           'half_t', 'HalfT',
           'laplace', 'Laplace',
           'lomax', 'Lomax',
           'nonneg_uniform', 'NonNegUniform',
           'normal', 'Normal',
           'posterior_steps',
           'student_t', 'StudentT',
           'uniform', 'Uniform',
           'PRIOR_FAMILIES', 'make_prior', 'prior_from_dict',
           ]
