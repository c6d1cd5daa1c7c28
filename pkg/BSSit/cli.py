"""Command line front-end: synth, run, score and flops subcommands.

Exit codes: 0 on success, 1 on runtime failures, 2 on usage or configuration errors.
"""
import argparse
import csv
import json
import os
import sys

from BSSit.data_matrix import DataMatrix
from BSSit.datagen import GroundTruth, SyntheticSpec, generate_synthetic, inject_ground_truth
from BSSit.datagen.score import TARGETS, correlation_table, model_score
from BSSit.engine import fit
from BSSit.engine_config import INIT_METHODS, EngineConfig
from BSSit.lowrank import flops_grid
from BSSit.model_state import Source
from BSSit.tools.exceptions import ConfigError, MatrixFormatError
from BSSit.tools.matrix_io import read_matrix, write_matrix

EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

DATA_FILE = "data.csv"


def _write_json(path, payload):
    with open(path, "w") as file:
        json.dump(payload, file, indent=2, sort_keys=True)
        file.write("\n")


def _load_config(path):
    if path is None:
        return dict()
    try:
        with open(path) as file:
            config = json.load(file)
    except FileNotFoundError:
        raise ConfigError("Configuration file {} not found".format(path))
    except json.JSONDecodeError as error:
        raise ConfigError("Configuration file {} is not valid JSON: {}".format(path, error))
    if not isinstance(config, dict):
        raise ConfigError("The configuration must be a JSON object, got {}".format(type(config).__name__))
    return config


def _override(config, key, value):
    if value is not None:
        config[key] = value


def parse_projections(value):
    """
    Parse `M_R[,N_R]`.

    Returns:
        ranks (list): [M_R, N_R] with N_R None when omitted.

    """
    fields = [field.strip() for field in str(value).split(",")]
    try:
        ranks = [int(field) for field in fields]
    except ValueError:
        raise ConfigError("--projections expects M_R[,N_R], got '{}'".format(value))
    if len(ranks) not in (1, 2):
        raise ConfigError("--projections expects M_R[,N_R], got '{}'".format(value))
    return ranks + [None] * (2 - len(ranks))


def parse_int_list(value):
    try:
        return [int(field) for field in str(value).split(",") if field.strip()]
    except ValueError:
        raise ConfigError("Expected a comma-separated list of integers, got '{}'".format(value))


def run_config(args):
    """
    Merge the JSON configuration and the command line flags of the run subcommand.

    Returns:
        config (dict): input, out, runs, and the keyword arguments of :class:`EngineConfig`.

    """
    config = _load_config(args.config)
    _override(config, "input", args.input)
    _override(config, "out", args.out)
    _override(config, "n_sources", args.k)
    _override(config, "priors_u", args.prior_u)
    _override(config, "priors_v", args.prior_v)
    _override(config, "max_em_iters", args.em_iters)
    _override(config, "max_bcd_iters", args.bcd_iters)
    _override(config, "tol", args.tol)
    _override(config, "seed", args.seed)
    _override(config, "runs", args.runs)
    _override(config, "init", args.init)
    if args.shared_hyperparams:
        config["shared_hyperparams"] = True
    if args.projections is not None:
        config["use_lowrank"] = True
        config["ranks"] = parse_projections(args.projections)

    for key in ("input", "out", "n_sources"):
        if key not in config:
            raise ConfigError("Missing required setting '{}'".format(key))
    config.setdefault("runs", 1)
    if int(config["runs"]) < 1:
        raise ConfigError("runs must be at least 1, got {}".format(config["runs"]))
    return config


def engine_config(config, seed=None):
    """
    Build the :class:`EngineConfig` of a merged configuration, invalid settings being usage errors.

    """
    settings = {key: value for key, value in config.items() if key not in ("input", "out", "runs")}
    if seed is not None:
        settings["seed"] = seed
    try:
        return EngineConfig.from_dict(settings)
    except (ValueError, TypeError) as error:
        raise ConfigError(str(error))


def write_run(directory, state, report):
    """
    Write the factors, the hyperparameters, the iteration log, the summary and the timing of one run.

    """
    os.makedirs(directory, exist_ok=True)
    write_matrix(os.path.join(directory, "U.csv"), state.u.columns)
    write_matrix(os.path.join(directory, "V.csv"), state.v.columns)
    _write_json(os.path.join(directory, "hyperparams.json"), dict(report.hyperparameters, alpha=report.alpha))
    report.write_jsonl(os.path.join(directory, "report.jsonl"))
    _write_json(os.path.join(directory, "summary.json"), report.summary())
    _write_json(os.path.join(directory, "timing.json"), {"wall_time": report.wall_time})


def read_run(directory):
    """

    Returns:
        sources (list): the :class:`Source` objects stored by :func:`write_run` in `directory`.

    """
    u = read_matrix(os.path.join(directory, "U.csv"))
    v = read_matrix(os.path.join(directory, "V.csv"))
    if u.shape[1] != v.shape[1]:
        raise MatrixFormatError("U and V have {} and {} columns".format(u.shape[1], v.shape[1]), path=directory)
    return [Source(k, u[:, k], v[:, k]) for k in range(u.shape[1])]


def run_directories(paths):
    """
    Expand the directories given to the score subcommand: a directory holding `U.csv` is one run,
    any other directory contributes its `run_*` subdirectories.

    """
    runs = list()
    for path in paths:
        if os.path.isfile(os.path.join(path, "U.csv")):
            runs.append(path)
        elif os.path.isdir(path):
            runs += sorted(os.path.join(path, name) for name in os.listdir(path)
                           if name.startswith("run_") and os.path.isfile(os.path.join(path, name, "U.csv")))
        else:
            raise ConfigError("Run directory {} does not exist".format(path))
    if not runs:
        raise ConfigError("No run found in {}".format(", ".join(paths) if paths else "the arguments"))
    return runs


def cmd_synth(args):
    """
    Write a synthetic data matrix and its ground truth manifest.
    With an `injection` entry in the configuration, the cells it describes are scaled to the target variance
    and superimposed on the synthetic data, which then plays the role of the background.

    """
    config = _load_config(args.config)
    _override(config, "seed", args.seed)
    out = args.out or config.pop("out", None)
    config.pop("out", None)
    if out is None:
        raise ConfigError("Missing required setting 'out'")
    injection = config.pop("injection", None)
    try:
        spec = SyntheticSpec.from_dict(config)
        x, truth = generate_synthetic(spec)
        if injection is not None:
            cells = dict(injection.get("cells", dict()), M=spec.M, N=spec.N, noise_sigma=0.)
            cells.setdefault("seed", spec.seed + 1)
            cells_spec = SyntheticSpec.from_dict(cells)
            _, cell_truth = generate_synthetic(cells_spec)
            x, truth = inject_ground_truth(x, cell_truth.true_sources, injection["target_variance"])
    except (KeyError, TypeError, ValueError) as error:
        raise ConfigError("Invalid synthetic configuration: {}".format(error))

    os.makedirs(out, exist_ok=True)
    write_matrix(os.path.join(out, DATA_FILE), x.values)
    truth.save(out)
    _write_json(os.path.join(out, "synth.json"), dict(spec.to_dict(), injection=injection))
    if args.verbose:
        print("(BSSit) Wrote a {}x{} data matrix with {} source(s) to {}".format(x.rows, x.cols,
                                                                                len(truth.true_sources), out))
    return EXIT_SUCCESS


def cmd_run(args):
    """
    Fit the model to a data matrix, once or `runs` times with seeds seed, seed+1, ...

    """
    config = run_config(args)
    cfg = engine_config(config)
    x = DataMatrix(read_matrix(config["input"]))
    try:
        cfg.validate_for(x)
    except ValueError as error:
        raise ConfigError(str(error))
    runs = int(config["runs"])

    for i in range(runs):
        cfg_i = cfg if runs == 1 else engine_config(config, seed=cfg.seed + i)
        directory = config["out"] if runs == 1 else os.path.join(config["out"], "run_{:03d}".format(i))
        state, report = fit(x, cfg_i, verbose=args.verbose)
        write_run(directory, state, report)
        if args.verbose:
            print("(BSSit) Run {} (seed {}) written to {}".format(i, cfg_i.seed, directory))
    return EXIT_SUCCESS


def cmd_score(args):
    """
    Score recovered sources against a ground truth manifest.

    """
    if args.truth is None:
        raise ConfigError("Missing required setting 'truth'")
    try:
        truth = GroundTruth.load(args.truth)
    except FileNotFoundError as error:
        raise ConfigError("Ground truth not found: {}".format(error))
    directories = run_directories(args.runs)
    runs = [read_run(directory) for directory in directories]

    score = model_score(truth, runs, target=args.target)
    table = correlation_table(truth, runs, target=args.target)
    result = {"score": score,
              "target": args.target,
              "runs": directories,
              "correlations": [{"cell": truth.true_sources[c].index, "run": directories[r], "correlation": table[c, r]}
                               for c in range(table.shape[0]) for r in range(table.shape[1])]}
    print("(BSSit) Score ({}, {} cell(s), {} run(s)): {:.6f}".format(args.target, table.shape[0], table.shape[1],
                                                                    score))
    if args.out is not None:
        os.makedirs(args.out, exist_ok=True)
        _write_json(os.path.join(args.out, "score.json"), result)
    return EXIT_SUCCESS


def cmd_flops(args):
    """
    Print full against reduced FLOP counts on a grid of (K, M_R) values, and export them as CSV.

    """
    dims = parse_int_list(args.dims)
    if len(dims) != 2 or min(dims) < 1:
        raise ConfigError("--dims expects two positive integers M,N, got '{}'".format(args.dims))
    sources = parse_int_list(args.k)
    reduced_rows = parse_int_list(args.projections)
    if not sources or not reduced_rows or min(sources + reduced_rows) < 1:
        raise ConfigError("--k and --projections expect positive integers")

    rows = flops_grid(dims[0], dims[1], sources, reduced_rows, n_r=args.reduced_cols, include_lift=args.include_lift)
    print("(BSSit) Reduced counts {} the lift of the factors between reduced and full coordinates".format(
        "include" if args.include_lift else "exclude"))
    print("{:>8} {:>8} {:>8} {:>16} {:>16} {:>10}".format("K", "M_R", "N_R", "full", "reduced", "reduction"))
    for row in rows:
        print("{K:>8} {m_r:>8} {n_r:>8} {full:>16} {reduced:>16} {reduction:>9.2f}%".format(**row))

    if args.out is not None:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "flops.csv"), "w", newline="") as file:
            fieldnames = ["K", "m_r", "n_r", "full", "reduced", "reduction", "include_lift"]
            writer = csv.DictWriter(file, fieldnames=fieldnames)
            writer.writeheader()
            writer.writerows(dict(row, include_lift=args.include_lift) for row in rows)
    return EXIT_SUCCESS


def build_parser():
    parser = argparse.ArgumentParser(prog="bssit", description="Probabilistic blind source separation.")
    sub = parser.add_subparsers(dest="command")
    sub.required = True

    synth = sub.add_parser("synth", help="Generate a synthetic data set and its ground truth")
    synth.add_argument("--config", type=str, default=None, help="JSON description of the data set")
    synth.add_argument("--out", type=str, default=None)
    synth.add_argument("--seed", type=int, default=None)
    synth.add_argument("-v", "--verbose", type=int, default=0)
    synth.set_defaults(handler=cmd_synth)

    run = sub.add_parser("run", help="Fit the model to a data matrix")
    run.add_argument("--config", type=str, default=None, help="JSON run configuration, overridden by the flags")
    run.add_argument("--input", type=str, default=None)
    run.add_argument("--out", type=str, default=None)
    run.add_argument("--k", type=int, default=None, help="number of sources")
    run.add_argument("--prior-u", type=str, default=None)
    run.add_argument("--prior-v", type=str, default=None)
    run.add_argument("--shared-hyperparams", action="store_true")
    run.add_argument("--projections", type=str, default=None, help="M_R[,N_R]")
    run.add_argument("--em-iters", type=int, default=None)
    run.add_argument("--bcd-iters", type=int, default=None)
    run.add_argument("--tol", type=float, default=None)
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--init", type=str, choices=INIT_METHODS, default=None,
                     help="initial factors: prior draws or leading singular triplets")
    run.add_argument("--runs", type=int, default=None)
    run.add_argument("-v", "--verbose", type=int, default=0)
    run.set_defaults(handler=cmd_run)

    score = sub.add_parser("score", help="Score runs against a ground truth")
    score.add_argument("--truth", type=str, default=None, help="manifest or directory written by synth")
    score.add_argument("--target", type=str, choices=TARGETS, default="source")
    score.add_argument("--out", type=str, default=None)
    score.add_argument("runs", nargs="*", help="run directories, or directories of run_* subdirectories")
    score.set_defaults(handler=cmd_score)

    flops = sub.add_parser("flops", help="FLOP counts of the full and the reduced updates")
    flops.add_argument("--dims", type=str, default="16384,500", help="M,N")
    flops.add_argument("--k", type=str, default="10,50,100")
    flops.add_argument("--projections", type=str, default="100,250,500,1000", help="grid of M_R values")
    flops.add_argument("--reduced-cols", type=int, default=None, help="N_R, no reduction of N by default")
    flops.add_argument("--include-lift", action="store_true",
                       help="count the maps between reduced and full coordinates in the reduced cost")
    flops.add_argument("--out", type=str, default=None)
    flops.set_defaults(handler=cmd_flops)
    return parser


def main(argv=None):
    """
    Entry point of the `bssit` command.

    Returns:
        code (int): the exit code.

    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else EXIT_USAGE

    try:
        return args.handler(args)
    except (ConfigError, MatrixFormatError) as error:
        print("(BSSit) error: {}".format(error), file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as error:
        print("(BSSit) error: {}".format(error), file=sys.stderr)
        return EXIT_USAGE
    except Exception as error:
        print("(BSSit) failure: {}: {}".format(type(error).__name__, error), file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
