from .flops import estimate_flops, flops_grid, reduction_ratio
from .projection_pair import ProjectionPair, build_projection, range_finder
from .reduced_cache import ReducedCache, likelihood_params_reduced, neg_log_joint_reduced, \
    update_noise_precision_reduced

__all__ = ['flops', 'estimate_flops', 'flops_grid', 'reduction_ratio',
           'projection_pair', 'ProjectionPair', 'build_projection', 'range_finder',
           'reduced_cache', 'ReducedCache', 'likelihood_params_reduced', 'neg_log_joint_reduced',
           'update_noise_precision_reduced',
           ]
