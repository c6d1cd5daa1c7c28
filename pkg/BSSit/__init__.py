import os

# BLAS thread caps, applied before numpy is imported
_threads = os.environ.get("BSSIT_THREADS", os.environ.get("DECOMPOSE_THREADS", "1"))
for _variable in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
    os.environ.setdefault(_variable, _threads)

from .data_matrix import DataMatrix, as_data_matrix
from .engine import bcd_sweep_factor, fit, gibbs_sweep_factor, likelihood_params, update_noise_precision
from .engine_config import EngineConfig
from .factor_bank import FactorBank
from .gaussian_likelihood import GaussianLikelihood
from .joint import neg_log_joint, reconstruct, residual, variance_explained
from .model_state import ModelState, Source
from .prior import Prior
from .run_report import RunReport
from .update_cache import UpdateCache

__all__ = ['datagen',
           'examples',
           'lowrank',
           'priors',
           'sampling',
           'tools',
           'data_matrix', 'DataMatrix', 'as_data_matrix',
           'engine', 'bcd_sweep_factor', 'fit', 'gibbs_sweep_factor', 'likelihood_params', 'update_noise_precision',
           'engine_config', 'EngineConfig',
           'factor_bank', 'FactorBank',
           'gaussian_likelihood', 'GaussianLikelihood',
           'joint', 'neg_log_joint', 'reconstruct', 'residual', 'variance_explained',
           'model_state', 'ModelState', 'Source',
           'prior', 'Prior',
           'run_report', 'RunReport',
           'update_cache', 'UpdateCache',
           ]
