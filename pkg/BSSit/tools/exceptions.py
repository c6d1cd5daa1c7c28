class ShapeError(ValueError):
    """
    Raised when matrices or factor banks have incompatible dimensions.

    """
    pass


class DeadSourceError(ArithmeticError):
    """
    Signals a source whose partner column has collapsed (:math:`B_{k,k}` below threshold).
    The engine catches it and re-initialises the column from its prior.

    Attributes:
        factor (str): 'U' or 'V', the factor that was being updated.
        column (int): index of the collapsed source.

    """

    def __init__(self, factor, column, value):
        self.factor = factor
        self.column = column
        self.value = value
        super().__init__("Source {} is dead while updating {}: B_kk = {}".format(column, factor, value))


class SupportViolationError(ValueError):
    """
    Signals factor values outside the support of their prior (the negative log-joint is infinite).

    Attributes:
        factor (str): 'U' or 'V'.
        columns (list): indices of the offending columns.

    """

    def __init__(self, factor, columns):
        self.factor = factor
        self.columns = list(columns)
        super().__init__("Columns {} of {} lie outside the support of their prior".format(self.columns, factor))


class MatrixFormatError(ValueError):
    """
    Raised when a matrix file cannot be parsed. `line` and `column` are 1-based.

    """

    def __init__(self, message, path=None, line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        location = ""
        if path is not None:
            location += str(path)
        if line is not None:
            location += ":{}".format(line)
        if column is not None:
            location += ":{}".format(column)
        super().__init__("{}: {}".format(location, message) if location else message)


class ConfigError(ValueError):
    """
    Raised for invalid run configurations (command line usage errors).

    """
    pass
