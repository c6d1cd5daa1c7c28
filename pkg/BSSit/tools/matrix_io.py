import json
import os
import warnings

import numpy as np

from BSSit.tools.exceptions import MatrixFormatError

# Extensions of the raw little-endian float64 format
RAW_EXTENSIONS = (".bin", ".f64", ".raw")


def sidecar_path(path):
    return str(path) + ".json"


def is_raw(path):
    return os.path.splitext(str(path))[1].lower() in RAW_EXTENSIONS


def write_matrix(path, values):
    """
    Write a real matrix to `path`.

    The format follows the extension: `.bin`, `.f64` and `.raw` give a raw little-endian row-major float64 file with a
    JSON sidecar `<path>.json` holding {rows, cols, dtype, order}; any other extension gives a CSV file whose first
    line is `rows,cols` followed by one line per row, numbers printed with 17 significant digits
    (hence read back bit-exactly).

    Args:
        path (str): destination.
        values (array_like): 2-dimensional array (1-dimensional arrays are written as one column).

    """
    values = np.asarray(values, dtype=np.float64)
    if values.ndim == 1:
        values = values[:, None]
    rows, cols = values.shape

    if is_raw(path):
        values.astype("<f8").tofile(str(path))
        with open(sidecar_path(path), "w") as file:
            json.dump({"rows": rows, "cols": cols, "dtype": "f64", "order": "row-major"}, file, sort_keys=True)
        return

    np.savetxt(str(path), values, fmt="%.17g", delimiter=",", header="{},{}".format(rows, cols), comments="")


def _locate_csv_error(path, cols, error):
    """
    Line and column of the first field that :func:`numpy.loadtxt` rejected.

    """
    with open(path) as file:
        lines = file.read().splitlines()
    for i, line in enumerate(lines[1:]):
        if not line.strip():
            continue
        fields = line.split(",")
        if len(fields) != cols:
            return MatrixFormatError("expected {} values, got {}".format(cols, len(fields)), path=path, line=i + 2)
        for j, field in enumerate(fields):
            try:
                float(field)
            except ValueError:
                return MatrixFormatError("cannot parse '{}' as a number".format(field), path=path,
                                         line=i + 2, column=j + 1)
    return MatrixFormatError(str(error), path=path)


def _read_csv(path):
    with open(path) as file:
        header = file.readline().strip()
    if not header:
        raise MatrixFormatError("empty file", path=path, line=1)
    try:
        rows, cols = (int(field) for field in header.split(","))
    except ValueError:
        raise MatrixFormatError("the header must be 'rows,cols', got '{}'".format(header), path=path, line=1)
    if rows < 1 or cols < 1:
        raise MatrixFormatError("dimensions must be positive, got {}x{}".format(rows, cols), path=path, line=1)

    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)
            values = np.loadtxt(path, dtype=np.float64, delimiter=",", skiprows=1, ndmin=2)
    except ValueError as error:
        raise _locate_csv_error(path, cols, error)

    if values.shape[0] != rows:
        raise MatrixFormatError("expected {} data rows, got {}".format(rows, values.shape[0]), path=path,
                                line=min(values.shape[0], rows) + 2)
    if values.shape[1] != cols:
        raise MatrixFormatError("expected {} values, got {}".format(cols, values.shape[1]), path=path, line=2)
    bad = np.argwhere(~np.isfinite(values))
    if bad.size:
        raise MatrixFormatError("non-finite value", path=path, line=int(bad[0, 0]) + 2, column=int(bad[0, 1]) + 1)
    return values


def _read_raw(path):
    try:
        with open(sidecar_path(path)) as file:
            meta = json.load(file)
    except (OSError, ValueError) as error:
        raise MatrixFormatError("unreadable sidecar {}: {}".format(sidecar_path(path), error), path=path)
    if meta.get("dtype") != "f64" or meta.get("order") != "row-major":
        raise MatrixFormatError("unsupported layout {}".format(meta), path=sidecar_path(path))

    rows, cols = int(meta["rows"]), int(meta["cols"])
    values = np.fromfile(str(path), dtype="<f8")
    if values.size != rows * cols:
        raise MatrixFormatError("expected {} values, found {}".format(rows * cols, values.size), path=path)
    values = values.reshape(rows, cols).astype(np.float64)
    bad = np.argwhere(~np.isfinite(values))
    if bad.size:
        raise MatrixFormatError("non-finite value", path=path, line=int(bad[0, 0]) + 1, column=int(bad[0, 1]) + 1)
    return values


def read_matrix(path):
    """
    Read a matrix written by :func:`write_matrix`.

    Returns:
        values (ndarray): the matrix.

    Raises:
        FileNotFoundError: if `path` does not exist.
        MatrixFormatError: if the file is malformed; the error carries the line and column of the problem.

    """
    if not os.path.exists(str(path)):
        raise FileNotFoundError("No such matrix file: {}".format(path))
    if is_raw(path):
        return _read_raw(path)
    return _read_csv(path)
