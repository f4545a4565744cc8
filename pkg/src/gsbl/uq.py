"""Posterior uncertainty for fixed precisions, and the model evidence.

For given (alpha, beta) the conditional posterior of x is Gaussian with
precision P = F^T A F + R^T B R and mean P^{-1} F^T A y. This module factors
P once (dense Cholesky, desk scale) and derives samples, per-component
credible intervals, and the log marginal likelihood from the factor.
"""

import math

import numpy as np
import scipy.linalg
from scipy.special import ndtri

from .model import IllPosedModelError, ImproperPriorError
from .solver import assemble_normal_dense

__all__ = [
    "PosteriorGaussian",
    "CredibleBand",
    "posterior_gaussian",
    "sample_posterior",
    "credible_band",
    "log_evidence",
    "DENSE_CAP",
]

# Posterior factorizations are dense; above this many unknowns the
# construction refuses rather than silently thrashing memory.
DENSE_CAP = 4096

_RANK_TOL = 1e-10


class PosteriorGaussian:
    """Gaussian posterior N(mean, C) stored as mean and a factor of C^{-1}.

    precision_factor is lower triangular L with L L^T = F^T A F + R^T B R.
    """

    def __init__(self, mean, precision_factor):
        self.mean = np.asarray(mean, dtype=float)
        self.precision_factor = np.asarray(precision_factor, dtype=float)

    @property
    def n(self):
        return self.mean.shape[0]

    def covariance_diagonal(self):
        """diag(C) via triangular solves: C_ii = ||L^{-1} e_i||^2."""
        linv = scipy.linalg.solve_triangular(
            self.precision_factor, np.eye(self.n), lower=True,
            check_finite=False)
        return np.sum(linv ** 2, axis=0)


class CredibleBand:
    """Component-wise interval [lower_i, upper_i] at the given level."""

    def __init__(self, lower, upper, level):
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)
        self.level = float(level)


def posterior_gaussian(model, state):
    """Factor the posterior precision and compute the posterior mean.

    Dense-only; raises UnsupportedSizeError above DENSE_CAP unknowns and an
    ill-posed-model error if the precision is not positive definite.
    """
    g, b = assemble_normal_dense(model, state, max_cols=DENSE_CAP)
    message = (
        "posterior precision F^T A F + R^T B R is not positive definite; "
        "the common kernel condition ker(F) ∩ ker(R) = {0} appears "
        "to be violated")
    try:
        factor = np.linalg.cholesky(g)
    except np.linalg.LinAlgError as exc:
        raise IllPosedModelError(message) from exc
    # Exactly singular matrices can factor with a rounding-noise pivot.
    pivots = np.abs(np.diag(factor))
    if not np.all(np.isfinite(pivots)) or pivots.min() <= 1e-7 * pivots.max():
        raise IllPosedModelError(message)
    mean = scipy.linalg.cho_solve((factor, True), b, check_finite=False)
    return PosteriorGaussian(mean, factor)


def sample_posterior(post, count, seed):
    """Draw `count` posterior samples, deterministically in (seed, count).

    Each sample is mean + L^{-T} z with z standard normal; returns a
    count x n matrix, one sample per row. seed may be an integer or a
    numpy Generator.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    z = rng.standard_normal((post.n, count))
    shifts = scipy.linalg.solve_triangular(
        post.precision_factor, z, lower=True, trans="T", check_finite=False)
    return (post.mean[:, None] + shifts).T


def credible_band(post, level):
    """Analytic per-component credible interval mean_i +/- q sqrt(C_ii).

    q is the two-sided standard-normal quantile for the level, e.g.
    level 0.999 gives q ~ 3.29053. Exact for the Gaussian posterior, so no
    sampling is involved.
    """
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    q = ndtri(0.5 * (1.0 + level))
    half = q * np.sqrt(post.covariance_diagonal())
    return CredibleBand(post.mean - half, post.mean + half, level)


def _require_proper_prior(model):
    r = model.reg.to_dense(max_cols=DENSE_CAP)
    k, n = r.shape
    if k < n:
        raise ImproperPriorError(
            f"regularizer has {k} rows for {n} unknowns, so R^T B R is "
            "singular and the prior cannot be normalized")
    svals = np.linalg.svd(r, compute_uv=False)
    if svals[-1] <= _RANK_TOL * svals[0]:
        raise ImproperPriorError(
            "regularizer is rank-deficient (nontrivial kernel), so R^T B R "
            "is singular and the prior cannot be normalized")


def log_evidence(model, state):
    """Log marginal likelihood log p(y | alpha, beta) of the Gaussian model.

    Evaluated through the posterior precision P = F^T A F + R^T B R:

        log p(y) = -(m/2) log 2 pi
                   + (1/2) (sum log alpha + sum log beta - log det P)
                   - (1/2) (y^T A y - b^T P^{-1} b),    b = F^T A y,

    where the quadratic term equals y^T Sigma^{-1} y for the marginal
    covariance Sigma = A^{-1} + F (R^T B R)^{-1} F^T. Requires a proper
    prior: R must have a trivial kernel, otherwise ImproperPriorError is
    raised.
    """
    _require_proper_prior(model)
    g, b = assemble_normal_dense(model, state, max_cols=DENSE_CAP)
    try:
        factor = np.linalg.cholesky(g)
    except np.linalg.LinAlgError as exc:
        raise IllPosedModelError(
            "posterior precision is not positive definite") from exc
    logdet_p = 2.0 * np.sum(np.log(np.diag(factor)))
    w = scipy.linalg.solve_triangular(factor, b, lower=True, check_finite=False)
    alpha, beta = state.alpha, state.beta
    quad = model.y @ (alpha * model.y) - w @ w
    return (-0.5 * model.m * math.log(2.0 * math.pi)
            + 0.5 * (np.sum(np.log(alpha)) + np.sum(np.log(beta)) - logdet_p)
            - 0.5 * quad)
