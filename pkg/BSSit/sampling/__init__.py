from .gamma import sample_gamma, sample_log_gamma
from .rng_handle import RngHandle
from .truncated_normal import sample_truncated_normal
from .truncation_region import TruncationRegion

__all__ = ['gamma', 'sample_gamma', 'sample_log_gamma',
           'rng_handle', 'RngHandle',
           'truncated_normal', 'sample_truncated_normal',
           'truncation_region', 'TruncationRegion',
           ]
