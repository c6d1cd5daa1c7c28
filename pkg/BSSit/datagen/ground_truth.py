import json
import os

import numpy as np

from BSSit.data_matrix import DataMatrix
from BSSit.model_state import Source
from BSSit.tools.matrix_io import read_matrix, write_matrix

MANIFEST_NAME = "truth.json"


class GroundTruth(object):
    """
    A :class:`GroundTruth` stores the sources a data matrix was built from.

    Attributes:
        true_sources (list): the :class:`Source` objects, scaled as they appear in the data.
        noise_sigma (float): standard deviation of the additive noise (0 for injected data).
        target_variance (float): elementwise variance :math:`\\sigma^2_{GT}` of every injected source,
                                 None for synthetic data.
        scales (list): scaling coefficients :math:`c_k` applied to the sources.
        background (DataMatrix): the matrix the sources were superimposed on, None for synthetic data.

    """

    def __init__(self, true_sources, noise_sigma=0., target_variance=None, scales=None, background=None):
        self.true_sources = list(true_sources)
        self.noise_sigma = float(noise_sigma)
        self.target_variance = None if target_variance is None else float(target_variance)
        self.scales = [1.] * len(self.true_sources) if scales is None else [float(c) for c in scales]
        self.background = background

    def signal(self):
        """

        Returns:
            signal (ndarray): the sum of the source matrices.

        """
        return np.sum([source.matrix() for source in self.true_sources], axis=0)

    def save(self, directory, matrix_extension=".csv"):
        """
        Write one matrix file per filter and the JSON manifest `truth.json` in `directory`.

        Returns:
            path (str): the path of the manifest.

        """
        os.makedirs(directory, exist_ok=True)
        cells = list()
        for k, source in enumerate(self.true_sources):
            names = {"spatial": "source_{}_spatial{}".format(k, matrix_extension),
                     "temporal": "source_{}_temporal{}".format(k, matrix_extension)}
            write_matrix(os.path.join(directory, names["spatial"]), source.spatial)
            write_matrix(os.path.join(directory, names["temporal"]), source.temporal)
            cells.append(dict(names, index=k, scale=self.scales[k]))

        manifest = {"noise_sigma": self.noise_sigma,
                    "target_variance": self.target_variance,
                    "sources": cells}
        path = os.path.join(directory, MANIFEST_NAME)
        with open(path, "w") as file:
            json.dump(manifest, file, indent=2, sort_keys=True)
        return path

    @classmethod
    def load(cls, path):
        """
        Read a manifest written by :meth:`save`. `path` is the manifest or its directory.

        """
        if os.path.isdir(path):
            path = os.path.join(path, MANIFEST_NAME)
        directory = os.path.dirname(path)
        with open(path) as file:
            manifest = json.load(file)

        sources = list()
        for cell in manifest["sources"]:
            spatial = read_matrix(os.path.join(directory, cell["spatial"]))[:, 0]
            temporal = read_matrix(os.path.join(directory, cell["temporal"]))[:, 0]
            sources.append(Source(cell["index"], spatial, temporal))
        return cls(sources, manifest["noise_sigma"], manifest.get("target_variance"),
                   [cell.get("scale", 1.) for cell in manifest["sources"]])

    def as_data_matrix(self):
        return DataMatrix(self.signal())
