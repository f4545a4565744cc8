"""Built-in test problems: signal generators, noise injection, and runners.

Six named experiments cover sparse denoising, 1-D deconvolution with
first-order differences, combined first/second-order regularization, 2-D
deconvolution with anisotropic second-order differences, reconstruction
from subsampled Fourier data, and fusion of two sensors with different
noise levels. Each runs end to end from a declarative config and returns a
report with the reconstruction and its metrics.
"""

import time

import numpy as np

from .model import GammaHyperPrior, HierarchicalModel, NoiseGrouping
from .operators import (Grid1D, build_anisotropic_2d, build_combined_tv,
                        build_gaussian_convolution, build_separable_2d,
                        build_subsampled_fourier, build_tv1, build_tv2,
                        dense_operator, identity_operator, stack_operators)
from .solver import BcdOptions, bcd_solve
from .uq import credible_band, posterior_gaussian

__all__ = [
    "EXPERIMENT_NAMES",
    "ConfigError",
    "ExperimentConfig",
    "ExperimentReport",
    "generate_sparse_signal",
    "canonical_piecewise_signal",
    "shepp_logan",
    "blocks_and_ramp_image",
    "log_spaced_integers",
    "add_noise",
    "snr",
    "default_config",
    "run_experiment",
]

EXPERIMENT_NAMES = ("denoise-sparse", "deconv-1d", "combined-reg",
                    "deconv-2d", "fourier-2d", "fusion")


class ConfigError(ValueError):
    """Invalid experiment configuration; `key` names the offending entry."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


def _rng_from(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def generate_sparse_signal(n, spikes, seed):
    """Zero signal with `spikes` seeded-random positions set to one."""
    if spikes < 0 or spikes > n:
        raise ValueError(f"spikes must lie in 0..{n}, got {spikes}")
    x = np.zeros(n)
    if spikes:
        rng = _rng_from(seed)
        positions = rng.choice(n, size=spikes, replace=False)
        x[positions] = 1.0
    return x


def canonical_piecewise_signal(n, kind):
    """Reference signals on [0, 1], sampled at the midpoints of n cells.

    'constant': plateaus 0 on [0, 0.15), 2 on [0.15, 0.25), 1 on
    [0.25, 0.5), 0.5 on [0.5, 1]; mean square 0.775 in the continuum.
    'constant-linear': 0 on [0, 0.25), 1 on [0.25, 0.5), then the line
    2(1 - t) on [0.5, 1], continuous at t = 0.5.

    The plateau values are pinned by this library, chosen so that the
    standard noise levels give the documented signal-to-noise ratios.
    """
    if n < 8:
        raise ValueError("n must be at least 8")
    t = Grid1D(n).midpoints()
    if kind == "constant":
        return np.select([t < 0.15, t < 0.25, t < 0.5], [0.0, 2.0, 1.0], 0.5)
    if kind == "constant-linear":
        return np.select([t < 0.25, t < 0.5], [0.0, 1.0], 2.0 * (1.0 - t))
    raise ValueError(f"unknown signal kind {kind!r}")


# Ten-ellipse head phantom, the variant with unit skull intensity and
# +/-0.1-scale interior features (documented in docs/report-schema.md).
# Columns: additive intensity, semi-axis a, semi-axis b, center x, center y,
# rotation angle in degrees (counterclockwise).
SHEPP_LOGAN_ELLIPSES = (
    (1.0, 0.69, 0.92, 0.0, 0.0, 0.0),
    (-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0),
    (-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0),
    (-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0),
    (0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0),
    (0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0),
    (0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0),
    (0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0),
    (0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0),
    (0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0),
)


def shepp_logan(n):
    """Rasterize the head phantom on an n x n grid over [-1, 1]^2.

    Pixel (i, j) samples the ellipse sum at the cell center with row 0 at
    the top (y decreasing with i). Values lie in [0, 1.02].
    """
    if n < 16:
        raise ValueError("n must be at least 16")
    coords = -1.0 + (2.0 * np.arange(n) + 1.0) / n
    xg = coords[None, :]
    yg = coords[::-1, None]
    img = np.zeros((n, n))
    for value, a, b, x0, y0, phi in SHEPP_LOGAN_ELLIPSES:
        rad = np.deg2rad(phi)
        ct, st = np.cos(rad), np.sin(rad)
        xr = ct * (xg - x0) + st * (yg - y0)
        yr = -st * (xg - x0) + ct * (yg - y0)
        img += value * ((xr / a) ** 2 + (yr / b) ** 2 <= 1.0)
    # The cavity value 1.0 - 0.8 - 0.2 is an exact zero that rounds to
    # -5.6e-17; clamp so the range contract [0, 1.02] holds.
    return np.maximum(img, 0.0)


def blocks_and_ramp_image(n):
    """Synthetic reference image: constant blocks, a linear ramp, a disk.

    Piecewise constant plus a patch that is linear along one axis, so both
    first- and second-order anisotropic priors have sparse increments; the
    disk adds a curved edge. Scaled so the mean square is about 0.05, which
    puts the standard 2-D deblurring noise level (variance 1e-5) at a
    signal-to-noise ratio of a few thousand.
    """
    if n < 16:
        raise ValueError("n must be at least 16")
    coords = (np.arange(n) + 0.5) / n
    xg = coords[None, :]
    yg = coords[:, None]
    img = np.zeros((n, n))
    img[(xg >= 0.22) & (xg < 0.42) & (yg >= 0.22) & (yg < 0.42)] = 0.8
    img[(xg >= 0.55) & (xg < 0.80) & (yg >= 0.25) & (yg < 0.45)] = 0.45
    ramp = (xg - 0.3) / 0.4 * 0.6
    in_ramp = (xg >= 0.3) & (xg < 0.7) & (yg >= 0.62) & (yg < 0.82)
    img += np.where(in_ramp, np.broadcast_to(ramp, (n, n)), 0.0)
    img[(xg - 0.82) ** 2 + (yg - 0.55) ** 2 <= 0.08 ** 2] = 0.6
    return img


def log_spaced_integers(low, high, count):
    """`count` logarithmically spaced integers in [low, high], de-duplicated."""
    if low < 1 or high < low or count < 1:
        raise ValueError("need 1 <= low <= high and count >= 1")
    vals = np.geomspace(low, high, count)
    return sorted(set(int(v) for v in np.rint(vals)))


def add_noise(y, sigma2, grouping, seed):
    """Add zero-mean normal noise with per-block variances.

    sigma2 is a single variance, or one variance per block of the grouping
    for grouped mode. seed may be an integer or a numpy Generator; a fixed
    seed gives bit-identical output.
    """
    y = np.asarray(y, dtype=float)
    rng = _rng_from(seed)
    if np.isscalar(sigma2):
        variances = [float(sigma2)]
        blocks = [y.size]
    else:
        variances = [float(s) for s in sigma2]
        blocks = grouping.block_sizes(y.size)
        if len(variances) != len(blocks):
            raise ValueError(
                f"{len(variances)} variances given for {len(blocks)} blocks")
    if any(s < 0 for s in variances):
        raise ValueError("variances must be nonnegative")
    if len(variances) == 1 and len(blocks) > 1:
        variances = variances * len(blocks)
    out = np.empty_like(y)
    start = 0
    for size, var in zip(blocks, variances):
        out[start:start + size] = (y[start:start + size]
                                   + rng.normal(0.0, np.sqrt(var), size))
        start += size
    return out


def snr(x_true, sigma2):
    """Mean square of the signal divided by the noise variance."""
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    x_true = np.asarray(x_true, dtype=float)
    return float(np.mean(x_true ** 2) / sigma2)


_DEFAULTS = {
    "denoise-sparse": {
        "n": 20, "sigma2": 5e-2, "spikes": 4, "grouping": "scalar",
        "hyper": {"c": 1.0, "d": 1e-4},
    },
    "deconv-1d": {
        "n": 40, "sigma2": 1e-2, "gamma": 3e-2, "grouping": "scalar",
        "hyper": {"c": 1.0, "d": 1e-4},
    },
    "combined-reg": {
        "n": 20, "sigma2": 1e-2, "gamma": 1e-2, "regularizer": "combined",
        "grouping": "scalar", "hyper": {"c": 1.0, "d": 1e-4},
    },
    "deconv-2d": {
        "n": 64, "sigma2": 1e-5, "gamma": 1.5e-2, "grouping": "scalar",
        "hyper": {"c": 1.0, "d": 1e-2},
        "solver": {"x_update_backend": "pcg"},
    },
    "fourier-2d": {
        "n": 64, "sigma2": 1e-3,
        "removed": {"count": 25, "low": 3, "high": 50},
        "grouping": "scalar", "hyper": {"c": 1.0, "d": 1e-2},
        "solver": {"x_update_backend": "pcg"},
    },
    "fusion": {
        "n": 40, "sigma2": [5e-1, 1e-2], "gamma": 3e-2,
        "direct_count": 36, "blurred_count": 24, "grouping": "grouped",
        "hyper": {"c": 1.0, "d": 1e-4},
    },
}

_SOLVER_KEYS = ("max_outer_iters", "outer_tol", "x_update_backend",
                "inner_max_iters", "inner_tol", "alpha_init", "beta_init")

_ALLOWED_KEYS = {
    "denoise-sparse": {"spikes"},
    "deconv-1d": {"gamma"},
    "combined-reg": {"gamma", "regularizer"},
    "deconv-2d": {"gamma"},
    "fourier-2d": {"removed"},
    "fusion": {"gamma", "direct_count", "blurred_count"},
}
_COMMON_KEYS = {"schema", "name", "n", "seed", "sigma2", "hyper", "grouping",
                "solver", "uq"}


def default_config(name):
    """Full default config dict for a built-in experiment."""
    if name not in EXPERIMENT_NAMES:
        raise ConfigError(f"unknown experiment {name!r}; choose one of "
                          f"{', '.join(EXPERIMENT_NAMES)}", key="name")
    out = {"schema": 1, "name": name, "seed": 0}
    for key, value in _DEFAULTS[name].items():
        out[key] = value
    return out


class ExperimentConfig:
    """Validated description of one experiment run."""

    def __init__(self, name, n, seed, sigma2, hyper, grouping_mode, solver,
                 uq_level=None, gamma=None, regularizer=None, spikes=None,
                 removed=None, direct_count=None, blurred_count=None,
                 raw=None):
        self.name = name
        self.n = n
        self.seed = seed
        self.sigma2 = sigma2
        self.hyper = hyper
        self.grouping_mode = grouping_mode
        self.solver = solver
        self.uq_level = uq_level
        self.gamma = gamma
        self.regularizer = regularizer
        self.spikes = spikes
        self.removed = removed
        self.direct_count = direct_count
        self.blurred_count = blurred_count
        self.raw = raw if raw is not None else {}

    @classmethod
    def from_dict(cls, data):
        """Build a config from a JSON-shaped dict, filling defaults.

        Raises ConfigError with the offending dotted key on any violation.
        """
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        if data.get("schema", 1) != 1:
            raise ConfigError(f"unsupported schema {data.get('schema')!r}; "
                              "this build reads schema 1", key="schema")
        name = data.get("name")
        if name not in EXPERIMENT_NAMES:
            raise ConfigError(
                f"unknown experiment {name!r}; choose one of "
                f"{', '.join(EXPERIMENT_NAMES)}", key="name")
        allowed = _COMMON_KEYS | _ALLOWED_KEYS[name]
        for key in data:
            if key not in allowed:
                raise ConfigError(f"unknown key {key!r} for experiment "
                                  f"{name!r}", key=key)
        merged = default_config(name)
        merged.update(data)

        n = merged["n"]
        if not isinstance(n, int) or n < 8:
            raise ConfigError(f"n must be an integer of at least 8, got {n!r}",
                              key="n")
        seed = merged.get("seed", 0)
        if not isinstance(seed, int):
            raise ConfigError(f"seed must be an integer, got {seed!r}",
                              key="seed")

        hyper_dict = merged.get("hyper", {})
        if not isinstance(hyper_dict, dict):
            raise ConfigError("hyper must be an object with keys c and d",
                              key="hyper")
        c = hyper_dict.get("c", 1.0)
        d = hyper_dict.get("d", _DEFAULTS[name]["hyper"]["d"])
        if not (isinstance(c, (int, float)) and c > 0):
            raise ConfigError(
                f"hyper-prior shape c must be positive, got {c!r}",
                key="hyper.c")
        if not (isinstance(d, (int, float)) and d > 0):
            raise ConfigError(
                f"hyper-prior rate d must be positive, got {d!r}",
                key="hyper.d")
        hyper = GammaHyperPrior(c, d)

        sigma2 = merged["sigma2"]
        if name == "fusion":
            if (not isinstance(sigma2, (list, tuple)) or len(sigma2) != 2
                    or any(not (isinstance(s, (int, float)) and s >= 0)
                           for s in sigma2)):
                raise ConfigError(
                    "fusion needs sigma2 = [variance1, variance2], both "
                    f"nonnegative, got {sigma2!r}", key="sigma2")
            sigma2 = [float(s) for s in sigma2]
        else:
            if not (isinstance(sigma2, (int, float)) and sigma2 >= 0):
                raise ConfigError(
                    f"sigma2 must be a nonnegative number, got {sigma2!r}",
                    key="sigma2")
            sigma2 = float(sigma2)

        grouping_mode = merged["grouping"]
        if grouping_mode not in NoiseGrouping.MODES:
            raise ConfigError(
                f"grouping must be one of {NoiseGrouping.MODES}, got "
                f"{grouping_mode!r}", key="grouping")

        solver_dict = dict(merged.get("solver", {}))
        if not isinstance(solver_dict, dict):
            raise ConfigError("solver must be an object", key="solver")
        base_solver = dict(_DEFAULTS[name].get("solver", {}))
        for key in solver_dict:
            if key not in _SOLVER_KEYS:
                raise ConfigError(f"unknown solver option {key!r}",
                                  key=f"solver.{key}")
        base_solver.update(solver_dict)
        try:
            solver = BcdOptions(**base_solver)
        except ValueError as exc:
            raise ConfigError(f"invalid solver options: {exc}", key="solver")

        uq_level = None
        uq_dict = merged.get("uq")
        if uq_dict is not None:
            if not isinstance(uq_dict, dict) or "level" not in uq_dict:
                raise ConfigError("uq must be an object with a level key",
                                  key="uq")
            uq_level = uq_dict["level"]
            if not (isinstance(uq_level, (int, float)) and 0 < uq_level < 1):
                raise ConfigError(
                    f"credible level must lie in (0, 1), got {uq_level!r}",
                    key="uq.level")
            uq_level = float(uq_level)

        extras = {}
        for key in ("gamma", "spikes", "regularizer", "removed",
                    "direct_count", "blurred_count"):
            extras[key] = merged.get(key)
        if extras["gamma"] is not None and not (
                isinstance(extras["gamma"], (int, float)) and extras["gamma"] > 0):
            raise ConfigError(
                f"gamma must be a positive number, got {extras['gamma']!r}",
                key="gamma")
        if name == "denoise-sparse":
            spikes = extras["spikes"]
            if not isinstance(spikes, int) or not 0 <= spikes <= n:
                raise ConfigError(
                    f"spikes must be an integer in 0..{n}, got {spikes!r}",
                    key="spikes")
        if name == "combined-reg":
            if extras["regularizer"] not in ("tv1", "tv2", "combined"):
                raise ConfigError(
                    "regularizer must be tv1, tv2, or combined, got "
                    f"{extras['regularizer']!r}", key="regularizer")
        if name == "fourier-2d":
            removed = extras["removed"]
            if isinstance(removed, dict):
                for key in ("count", "low", "high"):
                    if not isinstance(removed.get(key), int):
                        raise ConfigError(
                            "removed needs integer keys count, low, high",
                            key=f"removed.{key}")
                if not 1 <= removed["low"] <= removed["high"] <= n:
                    raise ConfigError(
                        f"removed band must satisfy 1 <= low <= high <= {n}",
                        key="removed")
            elif isinstance(removed, list):
                if any(not isinstance(v, int) or not 1 <= v <= n
                       for v in removed):
                    raise ConfigError(
                        f"removed indices must be integers in 1..{n}",
                        key="removed")
            else:
                raise ConfigError(
                    "removed must be a list of indices or an object with "
                    "count, low, high", key="removed")
        if name == "fusion":
            for key in ("direct_count", "blurred_count"):
                count = extras[key]
                if not isinstance(count, int) or not 1 <= count <= n:
                    raise ConfigError(
                        f"{key} must be an integer in 1..{n}, got {count!r}",
                        key=key)

        return cls(name=name, n=n, seed=seed, sigma2=sigma2, hyper=hyper,
                   grouping_mode=grouping_mode, solver=solver,
                   uq_level=uq_level, gamma=extras["gamma"],
                   regularizer=extras["regularizer"], spikes=extras["spikes"],
                   removed=extras["removed"],
                   direct_count=extras["direct_count"],
                   blurred_count=extras["blurred_count"], raw=merged)

    def resolved_dict(self):
        """JSON-shaped echo of the effective settings (for the report)."""
        out = {
            "schema": 1,
            "name": self.name,
            "n": self.n,
            "seed": self.seed,
            "sigma2": self.sigma2,
            "hyper": {"c": self.hyper.c, "d": self.hyper.d},
            "grouping": self.grouping_mode,
            "solver": {
                "max_outer_iters": self.solver.max_outer_iters,
                "outer_tol": self.solver.outer_tol,
                "x_update_backend": self.solver.x_update_backend,
                "inner_max_iters": self.solver.inner_max_iters,
                "inner_tol": self.solver.inner_tol,
                "alpha_init": self.solver.alpha_init,
                "beta_init": self.solver.beta_init,
            },
        }
        if self.uq_level is not None:
            out["uq"] = {"level": self.uq_level}
        for key in ("gamma", "regularizer", "spikes", "removed",
                    "direct_count", "blurred_count"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out


class ExperimentReport:
    """Everything a run produced: vectors, metrics, histories, band."""

    def __init__(self, config, x_true, y, x_hat, alpha, beta, snr_value,
                 rel_l2_error, iterations, converged, history, data_fit,
                 reg_norm, band, post_mean, timings, grid_t=None,
                 image_shape=None, y_image_shaped=False, extras=None,
                 posterior=None, sampling_seed=None):
        self.config = config
        self.x_true = x_true
        self.y = y
        self.x_hat = x_hat
        self.alpha = alpha
        self.beta = beta
        self.snr = snr_value
        self.rel_l2_error = rel_l2_error
        self.iterations = iterations
        self.converged = converged
        self.history = history
        self.data_fit = data_fit
        self.reg_norm = reg_norm
        self.band = band
        self.post_mean = post_mean
        self.timings = timings
        self.grid_t = grid_t
        self.image_shape = image_shape
        self.y_image_shaped = y_image_shaped
        self.extras = extras if extras is not None else {}
        self.posterior = posterior
        self.sampling_seed = sampling_seed

    @property
    def beta_inv(self):
        """Prior variances 1/beta normalized to a unit maximum."""
        inv = 1.0 / self.beta
        peak = inv.max()
        return inv / peak if peak > 0 else inv

    def to_json_dict(self):
        """Deterministic JSON summary (no timings; those go to timing.json)."""
        out = {
            "schema": 1,
            "name": self.config.name,
            "seed": self.config.seed,
            "n": self.config.n,
            "unknowns": int(self.x_hat.size),
            "observations": int(self.y.size),
            "increments": int(self.beta.size),
            "snr": self.snr,
            "rel_l2_error": float(self.rel_l2_error),
            "iterations": int(self.iterations),
            "converged": bool(self.converged),
            "config": self.config.resolved_dict(),
        }
        if self.band is not None:
            out["uq"] = {"level": self.band.level}
        if self.extras:
            out["extras"] = self.extras
        return out


def _jump_rows(x_true):
    # First-difference rows whose support straddles a jump of the signal.
    return [int(i) for i in np.nonzero(np.diff(x_true))[0]]


def _build_problem(config, signal_rng, subsample_rng):
    """Operators, true signal, and metadata for the named experiment."""
    name, n = config.name, config.n
    extras = {}
    grid_t = None
    image_shape = None
    y_image_shaped = False
    if name == "denoise-sparse":
        x_true = generate_sparse_signal(n, config.spikes, signal_rng)
        forward = identity_operator(n)
        reg = identity_operator(n)
        grid_t = Grid1D(n).midpoints()
    elif name == "deconv-1d":
        x_true = canonical_piecewise_signal(n, "constant")
        forward = build_gaussian_convolution(n, config.gamma)
        reg = build_tv1(n)
        grid_t = Grid1D(n).midpoints()
        extras["jump_rows"] = _jump_rows(x_true)
    elif name == "combined-reg":
        x_true = canonical_piecewise_signal(n, "constant-linear")
        forward = build_gaussian_convolution(n, config.gamma)
        builders = {"tv1": build_tv1, "tv2": build_tv2,
                    "combined": build_combined_tv}
        reg = builders[config.regularizer](n)
        grid_t = Grid1D(n).midpoints()
    elif name == "deconv-2d":
        image = blocks_and_ramp_image(n)
        x_true = np.reshape(image, -1, order="F")
        f1 = build_gaussian_convolution(n, config.gamma)
        forward = build_separable_2d(f1, n)
        reg = build_anisotropic_2d(build_tv2(n), n)
        image_shape = (n, n)
        y_image_shaped = True
    elif name == "fourier-2d":
        image = shepp_logan(n)
        x_true = np.reshape(image, -1, order="F")
        removed = config.removed
        if isinstance(removed, dict):
            removed = log_spaced_integers(removed["low"], removed["high"],
                                          removed["count"])
        else:
            removed = sorted(set(removed))
        forward = build_subsampled_fourier(n, removed)
        reg = build_anisotropic_2d(build_tv1(n), n)
        image_shape = (n, n)
        extras["removed"] = [int(v) for v in removed]
    elif name == "fusion":
        x_true = canonical_piecewise_signal(n, "constant")
        eye = np.eye(n)
        idx_direct = np.sort(subsample_rng.choice(n, config.direct_count,
                                                  replace=False))
        idx_blurred = np.sort(subsample_rng.choice(n, config.blurred_count,
                                                   replace=False))
        conv = build_gaussian_convolution(n, config.gamma).to_dense()
        forward = stack_operators([
            dense_operator(eye[idx_direct, :]),
            dense_operator(conv[idx_blurred, :]),
        ])
        reg = build_tv1(n)
        grid_t = Grid1D(n).midpoints()
        extras["direct_indices"] = [int(v) for v in idx_direct]
        extras["blurred_indices"] = [int(v) for v in idx_blurred]
    else:
        raise ConfigError(f"unknown experiment {name!r}", key="name")
    return forward, reg, x_true, grid_t, image_shape, y_image_shaped, extras


def _make_grouping(config, forward):
    if config.grouping_mode == "grouped":
        if forward.block_sizes is None:
            raise ConfigError(
                "grouped noise needs a stacked forward operator",
                key="grouping")
        return NoiseGrouping.grouped(forward.block_sizes)
    return NoiseGrouping(config.grouping_mode)


def run_experiment(config):
    """Run one named experiment end to end and return its report.

    The config seed derives four independent substreams, in order: signal
    generation, observation subsampling, noise injection, and posterior
    sampling. Identical configs therefore produce identical reports.
    """
    if isinstance(config, dict):
        config = ExperimentConfig.from_dict(config)
    t_start = time.perf_counter()
    children = np.random.SeedSequence(config.seed).spawn(4)
    signal_rng = np.random.default_rng(children[0])
    subsample_rng = np.random.default_rng(children[1])
    noise_rng = np.random.default_rng(children[2])

    (forward, reg, x_true, grid_t, image_shape, y_image_shaped,
     extras) = _build_problem(config, signal_rng, subsample_rng)
    grouping = _make_grouping(config, forward)
    # Noise synthesis follows the physical sensor blocks regardless of the
    # grouping the inference model assumes.
    if isinstance(config.sigma2, list):
        noise_grouping = NoiseGrouping.grouped(forward.block_sizes)
    else:
        noise_grouping = NoiseGrouping.scalar()
    y_clean = forward.apply(x_true)
    y = add_noise(y_clean, config.sigma2, noise_grouping, noise_rng)
    model = HierarchicalModel(y, forward, reg, config.hyper, grouping)

    t_solve = time.perf_counter()
    result = bcd_solve(model, config.solver)
    solve_seconds = time.perf_counter() - t_solve

    true_norm = np.linalg.norm(x_true)
    rel_error = float(np.linalg.norm(result.x - x_true)
                      / (true_norm if true_norm > 0 else 1.0))
    if isinstance(config.sigma2, list):
        snr_value = [snr(x_true, s) for s in config.sigma2]
    else:
        snr_value = snr(x_true, config.sigma2) if config.sigma2 > 0 else 0.0

    band = None
    post = None
    post_mean = None
    if config.uq_level is not None:
        post = posterior_gaussian(model, result.state)
        band = credible_band(post, config.uq_level)
        post_mean = post.mean

    timings = {
        "solve_seconds": solve_seconds,
        "total_seconds": time.perf_counter() - t_start,
    }
    return ExperimentReport(
        config=config, x_true=x_true, y=y, x_hat=result.x,
        alpha=result.state.alpha, beta=result.state.beta,
        snr_value=snr_value, rel_l2_error=rel_error,
        iterations=result.iterations, converged=result.converged,
        history=result.history, data_fit=result.data_fit,
        reg_norm=result.reg_norm, band=band, post_mean=post_mean,
        timings=timings, grid_t=grid_t, image_shape=image_shape,
        y_image_shaped=y_image_shaped, extras=extras, posterior=post,
        sampling_seed=children[3])
