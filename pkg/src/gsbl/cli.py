"""Command-line entry point: validate configs, run experiments, write artifacts.

Subcommands: `run` executes an experiment and writes its artifact directory;
`validate` checks a config without running; `list` prints the built-in
experiment names; `sample` runs an experiment and additionally draws
posterior samples. Exit codes: 0 success, 2 config error, 3 ill-posed
model, 4 I/O failure.
"""

import argparse
import json
import os
import shutil
import sys
import tempfile
import time

import numpy as np

from .experiments import (EXPERIMENT_NAMES, ConfigError, ExperimentConfig,
                          default_config, run_experiment)
from .model import IllPosedModelError, ImproperPriorError
from .uq import sample_posterior

__all__ = ["CliInvocation", "cli_run", "main"]

EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_ILL_POSED = 3
EXIT_IO_ERROR = 4

_BACKEND_FLAG_MAP = {"direct": "direct", "pcg": "pcg",
                     "gd": "gradient-descent"}

_EXPERIMENT_BLURBS = {
    "denoise-sparse": "recover a sparse spike train from noisy direct data",
    "deconv-1d": "deblur a piecewise constant signal, first-order prior",
    "combined-reg": "constant-linear signal with tv1, tv2, or combined prior",
    "deconv-2d": "deblur an image, anisotropic second-order prior",
    "fourier-2d": "recover an image from subsampled frequency data",
    "fusion": "fuse direct and blurred observations with grouped noise",
}


class CliInvocation:
    """Parsed command line: subcommand plus its options."""

    def __init__(self, subcommand, config_path=None, output_dir=None,
                 overrides=(), seed=None, uq_level=None, backend=None,
                 sample_count=16):
        self.subcommand = subcommand
        self.config_path = config_path
        self.output_dir = output_dir
        self.overrides = list(overrides)
        self.seed = seed
        self.uq_level = uq_level
        self.backend = backend
        self.sample_count = sample_count


class _CliConfigError(Exception):
    """Config problem, message already formatted with file and line."""


def _format(value):
    """Full-precision decimal text for one CSV cell."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "%.17g" % float(value)


def _find_key_line(text, key):
    """Best-effort 1-based line of a config key in the raw JSON text."""
    if key:
        needle = '"%s"' % key.split(".")[-1]
        for lineno, line in enumerate(text.splitlines(), start=1):
            if needle in line:
                return lineno
    return 1


def _apply_override(data, pair):
    """Set a dotted-path key from a --set key=value pair."""
    if "=" not in pair:
        raise _CliConfigError(
            f"override {pair!r} is not of the form key=value")
    key, _, raw = pair.partition("=")
    key = key.strip()
    if not key:
        raise _CliConfigError(f"override {pair!r} has an empty key")
    node = data
    parts = key.split(".")
    for part in parts[:-1]:
        if not isinstance(node.get(part), dict):
            node[part] = {}
        node = node[part]
    try:
        node[parts[-1]] = json.loads(raw)
    except json.JSONDecodeError:
        node[parts[-1]] = raw


def _load_config(invocation):
    """Read, override, and validate the config; return (config, raw_text)."""
    path = invocation.config_path
    if path is None:
        raise _CliConfigError("a --config file is required")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _CliConfigError(
            f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise _CliConfigError(f"{path}:1: config must be a JSON object")
    for pair in invocation.overrides:
        _apply_override(data, pair)
    if invocation.seed is not None:
        data["seed"] = invocation.seed
    if invocation.uq_level is not None:
        data["uq"] = {"level": invocation.uq_level}
    if invocation.backend is not None:
        solver = data.get("solver")
        if not isinstance(solver, dict):
            solver = {}
        solver["x_update_backend"] = _BACKEND_FLAG_MAP[invocation.backend]
        data["solver"] = solver
    try:
        config = ExperimentConfig.from_dict(data)
    except ConfigError as exc:
        line = _find_key_line(text, exc.key)
        raise _CliConfigError(f"{path}:{line}: {exc}") from exc
    return config, text


def _write_csv(path, header, columns):
    """Comma-separated file with a header row and full-precision floats."""
    columns = [np.asarray(col) for col in columns]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in zip(*columns):
            fh.write(",".join(_format(v) for v in row) + "\n")


def _write_json(path, payload):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_pgm(path, image):
    """Binary 16-bit PGM (big-endian, max value 65535) plus a JSON sidecar.

    Pixel values map [min, max] linearly onto 0..65535; the sidecar records
    the original range and shape so readers can undo the scaling.
    """
    image = np.asarray(image, dtype=float)
    lo = float(image.min())
    hi = float(image.max())
    span = hi - lo
    if span <= 0:
        quant = np.zeros(image.shape, dtype=">u2")
    else:
        quant = np.rint((image - lo) / span * 65535.0).astype(">u2")
    header = "P5\n%d %d\n65535\n" % (image.shape[1], image.shape[0])
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(quant.tobytes())
    _write_json(str(path) + ".json", {
        "min": lo, "max": hi,
        "rows": int(image.shape[0]), "cols": int(image.shape[1]),
    })


def _vector_csv(path, vector, grid_t):
    """Write a solution-space vector, with grid coordinates when 1-D."""
    index = np.arange(len(vector))
    if grid_t is not None:
        _write_csv(path, ["index", "t", "value"], [index, grid_t, vector])
    else:
        _write_csv(path, ["index", "value"], [index, vector])


def _unvec(vector, shape):
    # Images travel as column-major vectors end to end.
    return np.reshape(vector, shape, order="F")


def _write_artifacts(out_dir, report, samples=None):
    """Populate out_dir atomically: temp dir first, rename on success."""
    out_dir = os.path.abspath(out_dir)
    parent = os.path.dirname(out_dir) or "."
    os.makedirs(parent, exist_ok=True)
    tmp_dir = tempfile.mkdtemp(prefix=".gsbl-tmp-", dir=parent)
    try:
        _fill_artifact_dir(tmp_dir, report, samples)
        if os.path.isdir(out_dir):
            shutil.rmtree(out_dir)
        os.replace(tmp_dir, out_dir)
    except BaseException:
        shutil.rmtree(tmp_dir, ignore_errors=True)
        raise


def _fill_artifact_dir(dest, report, samples):
    _write_json(os.path.join(dest, "report.json"), report.to_json_dict())
    _write_json(os.path.join(dest, "timing.json"), report.timings)

    grid = report.grid_t
    _vector_csv(os.path.join(dest, "x_hat.csv"), report.x_hat, grid)
    _vector_csv(os.path.join(dest, "x_true.csv"), report.x_true, grid)
    y_grid = grid if report.y.size == report.x_hat.size else None
    _vector_csv(os.path.join(dest, "y.csv"), report.y, y_grid)
    _write_csv(os.path.join(dest, "beta_inv.csv"), ["index", "value"],
               [np.arange(report.beta.size), report.beta_inv])

    iters = np.arange(1, len(report.history) + 1)
    _write_csv(os.path.join(dest, "history.csv"),
               ["iter", "rel_change", "data_fit", "reg_norm"],
               [iters, report.history, report.data_fit, report.reg_norm])

    if report.band is not None:
        _write_csv(os.path.join(dest, "band.csv"),
                   ["index", "mean", "lower", "upper"],
                   [np.arange(report.post_mean.size), report.post_mean,
                    report.band.lower, report.band.upper])

    if report.image_shape is not None:
        shape = report.image_shape
        _write_pgm(os.path.join(dest, "x_hat.pgm"),
                   _unvec(report.x_hat, shape))
        _write_pgm(os.path.join(dest, "x_true.pgm"),
                   _unvec(report.x_true, shape))
        if report.y_image_shaped and report.y.size == shape[0] * shape[1]:
            _write_pgm(os.path.join(dest, "y.pgm"), _unvec(report.y, shape))

    if samples is not None:
        count, n = samples.shape
        sample_col = np.repeat(np.arange(count), n)
        index_col = np.tile(np.arange(n), count)
        _write_csv(os.path.join(dest, "samples.csv"),
                   ["sample", "index", "value"],
                   [sample_col, index_col, samples.reshape(-1)])


def _cmd_list():
    for name in EXPERIMENT_NAMES:
        print(f"{name:15s} {_EXPERIMENT_BLURBS[name]}")
    return EXIT_OK


def _cmd_validate(invocation):
    config, _ = _load_config(invocation)
    print(f"OK: {invocation.config_path} is a valid "
          f"{config.name} config (n={config.n}, seed={config.seed})")
    return EXIT_OK


def _cmd_run(invocation, with_samples=False):
    if with_samples and invocation.sample_count < 1:
        raise _CliConfigError(
            f"--count must be at least 1, got {invocation.sample_count}")
    config, _ = _load_config(invocation)
    if with_samples and config.uq_level is None:
        raw = dict(config.raw)
        raw["uq"] = {"level": 0.999}
        config = ExperimentConfig.from_dict(raw)
    t0 = time.perf_counter()
    report = run_experiment(config)
    samples = None
    if with_samples:
        rng = np.random.default_rng(report.sampling_seed)
        samples = sample_posterior(report.posterior,
                                   invocation.sample_count, rng)
    out_dir = invocation.output_dir or os.path.join("runs", config.name)
    _write_artifacts(out_dir, report, samples)
    wall = time.perf_counter() - t0
    print(f"{config.name}: iterations={report.iterations} "
          f"rel_l2_error={report.rel_l2_error:.4g} wall={wall:.2f}s "
          f"-> {out_dir}")
    return EXIT_OK


def cli_run(invocation):
    """Execute one parsed invocation; return the process exit status."""
    try:
        if invocation.subcommand == "list":
            return _cmd_list()
        if invocation.subcommand == "validate":
            return _cmd_validate(invocation)
        if invocation.subcommand == "run":
            return _cmd_run(invocation)
        if invocation.subcommand == "sample":
            return _cmd_run(invocation, with_samples=True)
        print(f"error: unknown subcommand {invocation.subcommand!r}",
              file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except (_CliConfigError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except (IllPosedModelError, ImproperPriorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ILL_POSED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="gsbl",
        description="Sparse Bayesian learning for linear inverse problems.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, needs_out):
        p.add_argument("--config", required=True, metavar="PATH",
                       help="experiment config (JSON, schema 1)")
        p.add_argument("--seed", type=int, default=None,
                       help="override the config seed")
        p.add_argument("--set", dest="overrides", action="append",
                       default=[], metavar="KEY=VALUE",
                       help="dotted-path config override (repeatable)")
        p.add_argument("--uq", dest="uq_level", type=float, default=None,
                       metavar="LEVEL",
                       help="enable credible bands at this level, e.g. 0.999")
        p.add_argument("--backend", choices=sorted(_BACKEND_FLAG_MAP),
                       default=None, help="x-update backend override")
        if needs_out:
            p.add_argument("--out", dest="output_dir", default=None,
                           metavar="DIR",
                           help="artifact directory (default runs/<name>)")

    run_p = sub.add_parser("run", help="run an experiment, write artifacts")
    add_common(run_p, needs_out=True)

    val_p = sub.add_parser("validate", help="check a config without running")
    add_common(val_p, needs_out=False)

    sub.add_parser("list", help="list built-in experiment names")

    samp_p = sub.add_parser(
        "sample", help="run an experiment, then draw posterior samples")
    add_common(samp_p, needs_out=True)
    samp_p.add_argument("--count", dest="sample_count", type=int, default=16,
                        help="number of posterior samples (default 16)")
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    invocation = CliInvocation(
        subcommand=args.subcommand,
        config_path=getattr(args, "config", None),
        output_dir=getattr(args, "output_dir", None),
        overrides=getattr(args, "overrides", []),
        seed=getattr(args, "seed", None),
        uq_level=getattr(args, "uq_level", None),
        backend=getattr(args, "backend", None),
        sample_count=getattr(args, "sample_count", 16),
    )
    return cli_run(invocation)


if __name__ == "__main__":
    sys.exit(main())
