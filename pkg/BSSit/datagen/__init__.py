from .ground_truth import GroundTruth
from .injection import inject_ground_truth
from .score import correlation_table, match_sources, model_score, pearson
from .synthetic import SyntheticSpec, generate_synthetic

__all__ = ['ground_truth', 'GroundTruth',
           'injection', 'inject_ground_truth',
           'score', 'correlation_table', 'match_sources', 'model_score', 'pearson',
           'synthetic', 'SyntheticSpec', 'generate_synthetic',
           ]
