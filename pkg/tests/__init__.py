__all__ = ['test_cli',
           'test_core',
           'test_datagen',
           'test_engine',
           'test_examples',
           'test_lowrank',
           'test_matrix_io',
           'test_priors',
           'test_sampling',
           ]
