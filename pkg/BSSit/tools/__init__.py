from .exceptions import ConfigError, DeadSourceError, MatrixFormatError, ShapeError, SupportViolationError
from .matrix_io import read_matrix, write_matrix

__all__ = ['exceptions', 'ConfigError', 'DeadSourceError', 'MatrixFormatError', 'ShapeError', 'SupportViolationError',
           'matrix_io', 'read_matrix', 'write_matrix',
           ]
