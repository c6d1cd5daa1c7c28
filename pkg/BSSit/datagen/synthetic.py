import numpy as np

from BSSit.data_matrix import DataMatrix
from BSSit.datagen.ground_truth import GroundTruth
from BSSit.model_state import Source
from BSSit.priors import Exponential, Normal, prior_from_dict
from BSSit.sampling.rng_handle import RngHandle

# Sparse filter scales of the default three-source data set
DEFAULT_SCALES = (1., 2., 4.)


class SyntheticSpec(object):
    """
    A :class:`SyntheticSpec` describes a synthetic data set: a sum of rank-1 sources, each the outer product of
    a dense filter (length M, unit norm) and a sparse exponentially distributed filter (length N),
    plus i.i.d. Gaussian noise. Dense filters are standard normal by default; half-normal ones make every source
    non-negative.

    Attributes:
        M (int): number of rows.
        N (int): number of columns.
        sources (list): pairs (dense prior, sparse scale :math:`\\beta_k`).
        noise_sigma (float): noise standard deviation.
        seed (int): seed of the generator.

    Example:
        >>> spec = SyntheticSpec(M=100, N=80, sources=[(HalfNormal(), 1.), (HalfNormal(), 3.)], noise_sigma=0.1)
        >>> x, truth = generate_synthetic(spec)

    """

    def __init__(self, M=1000, N=1000, sources=None, noise_sigma=0.1, seed=0):
        """

        Raises:
            ValueError: if a dimension is not positive, a scale is not positive or the noise level is negative.

        """
        if sources is None:
            sources = [(Normal(), beta) for beta in DEFAULT_SCALES]
        self.M, self.N = int(M), int(N)
        self.sources = list()
        for dense, beta in sources:
            if isinstance(dense, (str, dict)):
                dense = prior_from_dict(dense)
            if not float(beta) > 0:
                raise ValueError("Sparse filter scales must be positive, got {}".format(beta))
            self.sources.append((dense, float(beta)))
        self.noise_sigma = float(noise_sigma)
        self.seed = int(seed)

        if self.M < 1 or self.N < 1:
            raise ValueError("Dimensions must be positive, got {}x{}".format(M, N))
        if not self.sources:
            raise ValueError("At least one source is required")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be non-negative, got {}".format(noise_sigma))

    def to_dict(self):
        return {"M": self.M, "N": self.N,
                "sources": [{"dense": dense.to_dict(), "beta": beta} for dense, beta in self.sources],
                "noise_sigma": self.noise_sigma, "seed": self.seed}

    @classmethod
    def from_dict(cls, description):
        """
        Inverse of :meth:`to_dict`. Sources may also be given as a list of bare scales.

        """
        description = dict(description)
        sources = description.pop("sources", None)
        if sources is not None:
            sources = [(Normal(), source) if np.isscalar(source)
                       else (source.get("dense", "Normal"), source["beta"]) for source in sources]
        return cls(sources=sources, **description)


def generate_synthetic(spec):
    """
    Draw a synthetic data set.

    Every dense filter is drawn from its prior (standard normal by default) and normalised to unit Euclidean norm;
    every sparse filter is drawn from an exponential distribution of scale :math:`\\beta_k`.
    :math:`X = \\sum_k d_k s_k^\\top + \\sigma E` with E a standard normal matrix.

    Args:
        spec (SyntheticSpec): the description of the data set.

    Returns:
        x (DataMatrix): the data.
        truth (GroundTruth): the sources and the noise level.

    """
    rng = RngHandle(seed=spec.seed)
    sources = list()
    for k, (dense_prior, beta) in enumerate(spec.sources):
        dense = dense_prior.draw(spec.M, rng)
        dense /= np.linalg.norm(dense)
        sparse = Exponential(beta=beta).draw(spec.N, rng)
        sources.append(Source(k, dense, sparse))

    truth = GroundTruth(sources, noise_sigma=spec.noise_sigma)
    values = truth.signal()
    if spec.noise_sigma > 0:
        values = values + spec.noise_sigma * rng.standard_normal(spec.M * spec.N).reshape(spec.M, spec.N)
    return DataMatrix(values), truth
