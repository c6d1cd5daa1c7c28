import json

import numpy as np

from BSSit.model_state import log_norm_ratio


def _jsonable(value):
    """
    Convert numpy scalars and arrays (possibly nested in lists and dictionaries) into JSON types.

    """
    if isinstance(value, dict):
        return {key: _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if np.isfinite(value) else None
    return value


class RunReport(object):
    """
    A :class:`RunReport` collects the diagnostics of one call to :func:`BSSit.engine.fit`:
    one record per iteration (phase, monitor, noise precision, hyperparameters and FLOP count),
    the events of the run, and the final factors.

    Attributes:
        config (dict): the run configuration, defaults included.
        records (list): one dictionary per iteration.
        events (list): re-initialisations, support violations and projection warnings.
        em_iterations (int): number of EM iterations run.
        bcd_iterations (int): number of BCD iterations run.
        converged (dict): {'em': bool, 'bcd': bool}.
        total_flops (int): sum of the per-iteration FLOP counts.
        final_neg_log_joint (float): negative log-joint of the final state.
        variance_explained (list): share of the data energy per source.
        u (ndarray): final U.
        v (ndarray): final V.
        alpha (float): final noise precision.
        hyperparameters (dict): final {'U': [...], 'V': [...]} per-column families and hyperparameters.
        wall_time (float): duration of the run in seconds.

    """

    def __init__(self, config=None):
        self.config = config or dict()
        self.records = list()
        self.events = list()
        self.em_iterations = 0
        self.bcd_iterations = 0
        self.converged = {"em": False, "bcd": False}
        self.total_flops = 0
        self.final_neg_log_joint = float("nan")
        self.variance_explained = list()
        self.u = None
        self.v = None
        self.alpha = float("nan")
        self.hyperparameters = dict()
        self.wall_time = 0.

    def record(self, state, phase, flop_count, neg_log_joint):
        """
        Append the record of the iteration that just ended.

        Args:
            state (ModelState): state after the iteration.
            phase (str): 'em' or 'bcd'.
            flop_count (int): operations of the iteration.
            neg_log_joint (float): negative log-joint after the iteration.

        Returns:
            record (dict): the new record.

        """
        record = {"iteration": state.iteration,
                  "phase": phase,
                  "monitor": -neg_log_joint,
                  "neg_log_joint": neg_log_joint,
                  "alpha": state.alpha,
                  "theta_u": state.u.hyperparameters(),
                  "theta_v": state.v.hyperparameters(),
                  "flop_count": int(flop_count),
                  }
        self.records.append(record)
        self.total_flops += int(flop_count)
        if phase == "em":
            self.em_iterations += 1
        else:
            self.bcd_iterations += 1
        return record

    def finalize(self, state, neg_log_joint, variance_explained, wall_time):
        """
        Store the final state of the run.

        """
        self.final_neg_log_joint = float(neg_log_joint)
        self.variance_explained = [float(value) for value in variance_explained]
        self.u = state.u.columns.copy()
        self.v = state.v.columns.copy()
        self.alpha = state.alpha
        self.hyperparameters = {"U": [prior.to_dict() for prior in state.u.priors],
                                "V": [prior.to_dict() for prior in state.v.priors]}
        self.events = [dict(event) for event in state.events]
        self.wall_time = float(wall_time)

    def trajectory(self, key, phase=None):
        """

        Returns:
            values (list): the values of `key` over the records (of `phase` only, if given).

        """
        return [record[key] for record in self.records if phase is None or record["phase"] == phase]

    def to_jsonl(self):
        """

        Returns:
            log (str): one single-line JSON document per record.

        """
        return "".join(json.dumps(_jsonable(record), sort_keys=True) + "\n" for record in self.records)

    def write_jsonl(self, path):
        with open(path, "w") as file:
            file.write(self.to_jsonl())

    def summary(self):
        """
        Deterministic summary of the run: equal seeds give equal summaries (wall time is excluded).

        Returns:
            summary (dict): configuration, convergence, final negative log-joint, noise precision,
                            sources sorted by decreasing explained variance with their sparsity,
                            FLOP totals and events.

        """
        order = np.argsort(-np.asarray(self.variance_explained), kind="stable")
        sources = list()
        for k in order:
            sources.append({"index": int(k),
                            "variance_explained": self.variance_explained[k],
                            "sparsity_u": log_norm_ratio(self.u[:, k]),
                            "sparsity_v": log_norm_ratio(self.v[:, k]),
                            })
        return _jsonable({"config": self.config,
                          "em_iterations": self.em_iterations,
                          "bcd_iterations": self.bcd_iterations,
                          "converged": self.converged,
                          "final_neg_log_joint": self.final_neg_log_joint,
                          "alpha": self.alpha,
                          "sources": sources,
                          "total_flops": self.total_flops,
                          "flops_per_iteration": self.records[0]["flop_count"] if self.records else 0,
                          "events": self.events,
                          })
