import numpy as np

# Filters compared by the score
TARGETS = ("source", "spatial", "temporal")


def pearson(a, b):
    """
    Sample Pearson correlation of two vectors (matrices are flattened).

    Raises:
        ValueError: if the lengths differ or are below 2, or if an input has zero variance.

    """
    a = np.ravel(np.asarray(a, dtype=np.float64))
    b = np.ravel(np.asarray(b, dtype=np.float64))
    if a.shape != b.shape or a.shape[0] < 2:
        raise ValueError("Pearson correlation needs two vectors of equal length >= 2,"
                         " got {} and {}".format(a.shape[0], b.shape[0]))
    a = a - np.mean(a)
    b = b - np.mean(b)
    norm = np.sqrt(np.sum(a ** 2) * np.sum(b ** 2))
    if norm == 0:
        raise ValueError("Pearson correlation is undefined for a zero-variance input")
    return float(np.clip(np.sum(a * b) / norm, -1., 1.))


def _filter(source, target):
    if target == "source":
        return source.matrix()
    if target == "spatial":
        return source.spatial
    if target == "temporal":
        return source.temporal
    raise ValueError("target must be one of {}, got {}".format(TARGETS, target))


def best_correlation(cell, recovered, target="source"):
    """
    Highest absolute correlation between a ground truth cell and the sources of one run.
    Zero-variance recovered sources match nothing.

    """
    reference = _filter(cell, target)
    best = 0.
    for source in recovered:
        candidate = _filter(source, target)
        if np.ptp(candidate) == 0:
            continue
        best = max(best, abs(pearson(reference, candidate)))
    return best


def correlation_table(truth, runs, target="source"):
    """

    Returns:
        table (ndarray): array of shape (cells, runs) of best absolute correlations.

    """
    return np.array([[best_correlation(cell, run, target) for run in runs] for cell in truth.true_sources])


def lower_median(values):
    """
    Median where even-length samples take the lower of the two middle elements.

    """
    values = np.sort(np.asarray(values, dtype=np.float64))
    return float(values[(values.shape[0] - 1) // 2])


def model_score(truth, runs, target="source"):
    """
    Recovery score of a model: the mean over the ground truth cells of the median over the runs of the highest
    absolute correlation between the cell and the recovered sources.

    Args:
        truth (GroundTruth): the ground truth cells.
        runs (list): one list of recovered :class:`Source` objects per run.
        target (str): 'source' to compare the rank-1 matrices, 'spatial' or 'temporal' to compare one filter.

    Returns:
        score (float): a value in [0, 1].

    Raises:
        ValueError: if there is no run, a run is empty, or there is no ground truth cell.

    """
    runs = [list(run) for run in runs]
    if not runs:
        raise ValueError("At least one run is required to compute a score")
    if any(len(run) == 0 for run in runs):
        raise ValueError("Every run must contain at least one recovered source")
    if not truth.true_sources:
        raise ValueError("The ground truth contains no cell")
    table = correlation_table(truth, runs, target)
    return float(np.mean([lower_median(row) for row in table]))


def match_sources(truth, recovered, target="temporal"):
    """
    Pair every ground truth cell with the recovered source it correlates best with (in absolute value).

    Returns:
        matches (list): for every cell, the position in `recovered` of its best match.

    """
    matches = list()
    for cell in truth.true_sources:
        reference = _filter(cell, target)
        scores = [abs(pearson(reference, _filter(source, target))) if np.ptp(_filter(source, target)) > 0 else 0.
                  for source in recovered]
        matches.append(int(np.argmax(scores)))
    return matches
