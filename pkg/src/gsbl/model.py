"""Hierarchical Gaussian model with Gamma hyper-priors.

Observation model: y = F x + noise with noise precision A = diag(alpha).
Prior: x | beta ~ N(0, (R^T B R)^{-1}) with B = diag(beta), where R maps the
unknowns to increments assumed sparse. Each precision entry carries a
Gamma(c, d) hyper-prior (shape c, rate d), which is conditionally conjugate.
"""

import math

import numpy as np

__all__ = [
    "GammaHyperPrior",
    "NoiseGrouping",
    "PrecisionState",
    "HierarchicalModel",
    "ImproperPriorError",
    "IllPosedModelError",
    "gamma_log_pdf",
    "log_likelihood",
    "log_prior",
]


class ImproperPriorError(Exception):
    """Raised when a computation needs R^T B R invertible but R has a kernel."""


class IllPosedModelError(Exception):
    """Raised when the forward and regularization operators share a kernel
    vector, violating the common kernel condition ker(F) ∩ ker(R) = {0}."""


class GammaHyperPrior:
    """Gamma(c, d) hyper-prior with shape c > 0 and rate d > 0.

    Mean c/d, variance c/d^2. Small d lets the precisions follow the data.
    """

    def __init__(self, c=1.0, d=1e-4):
        if c <= 0 or d <= 0:
            raise ValueError(f"Gamma parameters must be positive, got c={c}, d={d}")
        self.c = float(c)
        self.d = float(d)

    def __repr__(self):
        return f"GammaHyperPrior(c={self.c}, d={self.d})"

    def __eq__(self, other):
        return (isinstance(other, GammaHyperPrior)
                and self.c == other.c and self.d == other.d)


class NoiseGrouping:
    """How the noise precisions alpha are tied across observation entries.

    mode 'per-entry': one alpha per observation.
    mode 'scalar': a single alpha shared by all observations.
    mode 'grouped': one alpha per row block, broadcast within the block;
    boundaries are the block sizes in order.
    """

    MODES = ("per-entry", "scalar", "grouped")

    def __init__(self, mode, boundaries=None):
        if mode not in self.MODES:
            raise ValueError(f"mode must be one of {self.MODES}, got {mode!r}")
        if mode == "grouped":
            if not boundaries:
                raise ValueError("grouped mode needs block sizes")
            boundaries = [int(b) for b in boundaries]
            if any(b < 1 for b in boundaries):
                raise ValueError("block sizes must be positive")
        else:
            boundaries = None
        self.mode = mode
        self.boundaries = boundaries

    @classmethod
    def per_entry(cls):
        return cls("per-entry")

    @classmethod
    def scalar(cls):
        return cls("scalar")

    @classmethod
    def grouped(cls, boundaries):
        return cls("grouped", boundaries)

    def check_length(self, m):
        if self.mode == "grouped" and sum(self.boundaries) != m:
            raise ValueError(
                f"block sizes {self.boundaries} must sum to the data length {m}")

    def block_sizes(self, m):
        """Block sizes covering a length-m vector (scalar is one block)."""
        if self.mode == "per-entry":
            return [1] * m
        if self.mode == "scalar":
            return [m]
        return list(self.boundaries)

    def __repr__(self):
        if self.mode == "grouped":
            return f"NoiseGrouping('grouped', {self.boundaries})"
        return f"NoiseGrouping({self.mode!r})"


class PrecisionState:
    """Current inverse variances: alpha (noise, length m), beta (prior, length k)."""

    def __init__(self, alpha, beta):
        alpha = np.asarray(alpha, dtype=float)
        beta = np.asarray(beta, dtype=float)
        for name, vec in (("alpha", alpha), ("beta", beta)):
            if vec.ndim != 1:
                raise ValueError(f"{name} must be a vector")
            if not np.all(np.isfinite(vec)) or np.any(vec <= 0):
                raise ValueError(f"{name} entries must be positive and finite")
        self.alpha = alpha
        self.beta = beta

    @classmethod
    def constant(cls, m, k, alpha=1.0, beta=1.0):
        return cls(np.full(m, float(alpha)), np.full(k, float(beta)))


class HierarchicalModel:
    """Data, operators, hyper-prior, and noise grouping of one inverse problem.

    Parameters
    ----------
    y : ndarray
        Observations, length m.
    forward : LinearOperator
        F, mapping the n unknowns to the m observations.
    reg : LinearOperator
        R, mapping the unknowns to k increments.
    hyper : GammaHyperPrior, optional
        Shared Gamma(c, d) hyper-prior for all alpha and beta entries.
    grouping : NoiseGrouping, optional
        Defaults to per-entry noise precisions.
    """

    def __init__(self, y, forward, reg, hyper=None, grouping=None):
        y = np.asarray(y, dtype=float)
        if y.ndim != 1 or y.shape[0] != forward.rows:
            raise ValueError(
                f"y must be a vector of length {forward.rows}, got shape {y.shape}")
        if forward.cols != reg.cols:
            raise ValueError(
                f"forward has {forward.cols} columns but the regularizer has "
                f"{reg.cols}")
        self.y = y
        self.forward = forward
        self.reg = reg
        self.hyper = hyper if hyper is not None else GammaHyperPrior()
        self.grouping = grouping if grouping is not None else NoiseGrouping.per_entry()
        self.grouping.check_length(forward.rows)

    @property
    def m(self):
        return self.forward.rows

    @property
    def n(self):
        return self.forward.cols

    @property
    def k(self):
        return self.reg.rows

    def initial_state(self, alpha=1.0, beta=1.0):
        return PrecisionState.constant(self.m, self.k, alpha, beta)


def gamma_log_pdf(x, hyper):
    """Log-density of Gamma(c, d) at x > 0: c log d - log Γ(c) + (c-1) log x - d x."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("Gamma density is supported on x > 0")
    c, d = hyper.c, hyper.d
    return c * math.log(d) - math.lgamma(c) + (c - 1.0) * np.log(x) - d * x


def log_likelihood(x, alpha, model):
    """Log of the generalized Gaussian likelihood p(y | x, alpha).

    -(m/2) log 2 pi + (1/2) sum_i log alpha_i - (1/2) (Fx-y)^T A (Fx-y).
    """
    alpha = np.asarray(alpha, dtype=float)
    if alpha.shape != (model.m,):
        raise ValueError(f"alpha must have length {model.m}")
    if np.any(alpha <= 0):
        raise ValueError("alpha entries must be positive")
    residual = model.forward.apply(np.asarray(x, dtype=float)) - model.y
    return (-0.5 * model.m * math.log(2.0 * math.pi)
            + 0.5 * np.sum(np.log(alpha))
            - 0.5 * residual @ (alpha * residual))


def log_prior(x, beta, model):
    """Log of the conditionally Gaussian prior, up to its normalizing constant.

    (1/2) sum_j log beta_j - (1/2) (Rx)^T B (Rx). The constant is omitted
    because the prior may be improper (R may have a nontrivial kernel), so
    only ratios and proportionality are meaningful.
    """
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (model.k,):
        raise ValueError(f"beta must have length {model.k}")
    if np.any(beta <= 0):
        raise ValueError("beta entries must be positive")
    increments = model.reg.apply(np.asarray(x, dtype=float))
    return 0.5 * np.sum(np.log(beta)) - 0.5 * increments @ (beta * increments)
