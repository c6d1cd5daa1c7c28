from .flops_tradeoff import run_flops_tradeoff
from .hyperparameter_recovery import run_hyperparameter_recovery
from .injection_benchmark import run_injection_benchmark
from .lowrank_accuracy import run_lowrank_accuracy
from .weak_source_separation import run_weak_source_separation

__all__ = ['flops_tradeoff', 'run_flops_tradeoff',
           'hyperparameter_recovery', 'run_hyperparameter_recovery',
           'injection_benchmark', 'run_injection_benchmark',
           'lowrank_accuracy', 'run_lowrank_accuracy',
           'weak_source_separation', 'run_weak_source_separation',
           ]
