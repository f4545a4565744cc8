"""Coordinate-descent solver for the hierarchical model.

Alternates a linear solve for the conditional posterior mean of x with the
closed-form conditional-mean updates of the precisions alpha and beta. The
x-update solves the SPD system (F^T A F + R^T B R) x = F^T A y with one of
three backends: a dense Cholesky factorization, Jacobi-preconditioned
conjugate gradients, or steepest descent with exact line search. The latter
two never materialize the coefficient matrix.
"""

import logging

import numpy as np
import scipy.linalg

from .model import IllPosedModelError, PrecisionState
from .operators import UnsupportedSizeError, check_common_kernel

__all__ = [
    "BcdOptions",
    "BcdResult",
    "update_x",
    "update_alpha",
    "update_beta",
    "gradient_descent_solve",
    "pcg_solve",
    "matfree_normal_matvec_2d",
    "matfree_normal_rhs_2d",
    "assemble_normal_dense",
    "bcd_solve",
    "DIRECT_SIZE_LIMIT",
    "BACKENDS",
]

logger = logging.getLogger(__name__)

# The automatic backend uses a dense factorization up to this many unknowns
# and switches to the matrix-free gradient-descent path above it.
DIRECT_SIZE_LIMIT = 2048

# Hard cap for dense assembly of the normal equations (memory guard).
DENSE_ASSEMBLY_CAP = 4096

BACKENDS = ("direct", "pcg", "gradient-descent")

_ILL_POSED_MSG = (
    "the coefficient matrix F^T A F + R^T B R is not positive definite; "
    "the common kernel condition ker(F) ∩ ker(R) = {0} appears to be "
    "violated")


class BcdOptions:
    """Solver knobs.

    x_update_backend 'auto' picks 'direct' up to DIRECT_SIZE_LIMIT unknowns
    and 'gradient-descent' above. Inner solves are warm-started from the
    previous outer iterate.
    """

    def __init__(self, max_outer_iters=1000, outer_tol=1e-6,
                 x_update_backend="auto", inner_max_iters=50000,
                 inner_tol=1e-10, alpha_init=1.0, beta_init=1.0):
        if max_outer_iters < 1 or inner_max_iters < 1:
            raise ValueError("iteration counts must be at least 1")
        if outer_tol < 0 or inner_tol < 0:
            raise ValueError("tolerances must be nonnegative")
        if alpha_init <= 0 or beta_init <= 0:
            raise ValueError("initial precisions must be positive")
        if x_update_backend not in BACKENDS + ("auto",):
            raise ValueError(
                f"backend must be 'auto' or one of {BACKENDS}, got "
                f"{x_update_backend!r}")
        self.max_outer_iters = int(max_outer_iters)
        self.outer_tol = float(outer_tol)
        self.x_update_backend = x_update_backend
        self.inner_max_iters = int(inner_max_iters)
        self.inner_tol = float(inner_tol)
        self.alpha_init = float(alpha_init)
        self.beta_init = float(beta_init)


class BcdResult:
    """Outcome of a coordinate-descent run.

    history holds the relative x-change per outer iteration; data_fit and
    reg_norm hold ||Fx - y||_2 and ||Rx||_1 per iteration for diagnostics.
    """

    def __init__(self, x, state, iterations, converged, history,
                 data_fit, reg_norm):
        self.x = x
        self.state = state
        self.iterations = iterations
        self.converged = converged
        self.history = np.asarray(history, dtype=float)
        self.data_fit = np.asarray(data_fit, dtype=float)
        self.reg_norm = np.asarray(reg_norm, dtype=float)


def update_alpha(residual, hyper, grouping):
    """Conditional-mean update of the noise precisions given residual Fx - y.

    Per entry the conditional is Gamma(c + 1/2, d + residual_i^2/2); tying
    entries within a group pools them into Gamma(c + m_g/2, d + ||r_g||^2/2).
    The returned vector broadcasts each group's mean over its entries:

    - per-entry: alpha_i = (1 + 2c) / (residual_i^2 + 2d)
    - scalar:    alpha   = (m + 2c) / (||residual||^2 + 2d)
    - grouped:   alpha_g = (m_g + 2c) / (||residual_g||^2 + 2d)
    """
    residual = np.asarray(residual, dtype=float)
    c, d = hyper.c, hyper.d
    if grouping.mode == "per-entry":
        return (1.0 + 2.0 * c) / (residual ** 2 + 2.0 * d)
    grouping.check_length(residual.size)
    out = np.empty(residual.size)
    start = 0
    for size in grouping.block_sizes(residual.size):
        seg = residual[start:start + size]
        out[start:start + size] = (size + 2.0 * c) / (seg @ seg + 2.0 * d)
        start += size
    return out


def update_beta(rx, hyper):
    """Conditional-mean update of the prior precisions given increments Rx.

    beta_j = (1 + 2c) / ([Rx]_j^2 + 2d), the mean of Gamma(c + 1/2,
    d + [Rx]_j^2 / 2).
    """
    rx = np.asarray(rx, dtype=float)
    return (1.0 + 2.0 * hyper.c) / (rx ** 2 + 2.0 * hyper.d)


def assemble_normal_dense(model, state, max_cols=None):
    """Dense coefficient matrix and right-hand side of the x-update system.

    Returns (G, b) with G = F^T A F + R^T B R and b = F^T A y. Intended for
    the direct backend, posterior factorizations, and validation; raises
    UnsupportedSizeError above the assembly cap.
    """
    cap = DENSE_ASSEMBLY_CAP if max_cols is None else max_cols
    f = model.forward.to_dense(max_cols=cap)
    r = model.reg.to_dense(max_cols=cap)
    g = f.T @ (state.alpha[:, None] * f) + r.T @ (state.beta[:, None] * r)
    b = f.T @ (state.alpha * model.y)
    return g, b


def _normal_matvec(model, state):
    """Matrix-free x -> (F^T A F + R^T B R) x and the right-hand side."""
    f, r = model.forward, model.reg
    alpha, beta = state.alpha, state.beta

    def matvec(x):
        return (f.adjoint_apply(alpha * f.apply(x))
                + r.adjoint_apply(beta * r.apply(x)))

    b = f.adjoint_apply(alpha * model.y)
    return matvec, b


def _normal_diag(model, state):
    """diag(F^T A F + R^T B R) when both operators provide it, else None."""
    df = model.forward.normal_diag(state.alpha)
    dr = model.reg.normal_diag(state.beta)
    if df is None or dr is None:
        return None
    diag = df + dr
    return np.where(diag > 0, diag, 1.0)


def gradient_descent_solve(matvec, b, x0=None, tol=1e-10, max_iters=50000,
                           callback=None):
    """Steepest descent with exact line search for an SPD system G x = b.

    Starting from r = b - G x, each iteration computes G r, the step size
    gamma = r^T r / r^T G r, then x <- x + gamma r and r <- r - gamma G r,
    stopping once ||r|| <= tol * ||b|| or the iteration cap is reached.
    callback(iteration, r, Gr, gamma), when given, observes each step;
    iterations count from 1.
    """
    b = np.asarray(b, dtype=float)
    x = np.zeros_like(b) if x0 is None else np.array(x0, dtype=float)
    b_norm = np.linalg.norm(b)
    if b_norm == 0.0:
        return np.zeros_like(b)
    r = b - matvec(x)
    iteration = 0
    while np.linalg.norm(r) > tol * b_norm and iteration < max_iters:
        iteration += 1
        gr = matvec(r)
        rgr = r @ gr
        if rgr <= 0.0:
            raise IllPosedModelError(_ILL_POSED_MSG)
        gamma = (r @ r) / rgr
        if callback is not None:
            callback(iteration, r.copy(), gr.copy(), gamma)
        x = x + gamma * r
        r = r - gamma * gr
    return x


def pcg_solve(matvec, b, x0=None, tol=1e-10, max_iters=50000, diag=None):
    """Conjugate gradients with an optional Jacobi preconditioner.

    diag, when given, holds the (positive) diagonal of G; the preconditioner
    is M = diag(diag). Stops once ||r|| <= tol * ||b||.
    """
    b = np.asarray(b, dtype=float)
    x = np.zeros_like(b) if x0 is None else np.array(x0, dtype=float)
    b_norm = np.linalg.norm(b)
    if b_norm == 0.0:
        return np.zeros_like(b)
    inv_diag = None
    if diag is not None:
        diag = np.asarray(diag, dtype=float)
        inv_diag = 1.0 / np.where(diag > 0, diag, 1.0)
    r = b - matvec(x)
    z = inv_diag * r if inv_diag is not None else r
    p = z.copy()
    rho = r @ z
    iteration = 0
    while np.linalg.norm(r) > tol * b_norm and iteration < max_iters:
        q = matvec(p)
        pq = p @ q
        if pq <= 0.0:
            raise IllPosedModelError(_ILL_POSED_MSG)
        step = rho / pq
        x = x + step * p
        r = r - step * q
        z = inv_diag * r if inv_diag is not None else r
        rho_next = r @ z
        p = z + (rho_next / rho) * p
        rho = rho_next
        iteration += 1
    return x


def _as_matrix(op):
    if hasattr(op, "to_dense"):
        return op.to_dense()
    return np.asarray(op, dtype=float)


def matfree_normal_matvec_2d(f1, r1, alpha_img, beta1_img, beta2_img, x):
    """(F^T A F + R^T B R) x for separable 2-D operators, via small factors.

    F = F1 (x) F1 and R = [I (x) R1; R1 (x) I] act on vectorized n x n
    images (column-major). With A~ the n x n grid carrying alpha, B~1 the
    k1 x n grid carrying the first beta block (weights of vec(R1 X)) and
    B~2 the n x k1 grid carrying the second (weights of vec(X R1^T)):

        G x = vec(F1^T [A~ o F1 X F1^T] F1)
            + vec(R1^T [B~1 o R1 X])
            + vec([B~2 o X R1^T] R1)

    where o is the elementwise product. Only n x n and k1 x n matrices are
    touched; the n^2 x n^2 system matrix is never formed.
    """
    f1m = _as_matrix(f1)
    r1m = _as_matrix(r1)
    n = f1m.shape[1]
    k1 = r1m.shape[0]
    if f1m.shape != (n, n):
        raise ValueError(f"f1 must be square, got {f1m.shape}")
    if r1m.shape != (k1, n):
        raise ValueError(f"r1 must have {n} columns, got {r1m.shape}")
    alpha_img = np.asarray(alpha_img, dtype=float)
    beta1_img = np.asarray(beta1_img, dtype=float)
    beta2_img = np.asarray(beta2_img, dtype=float)
    if alpha_img.shape != (n, n):
        raise ValueError(f"alpha grid must be {n}x{n}, got {alpha_img.shape}")
    if beta1_img.shape != (k1, n):
        raise ValueError(f"first beta grid must be {k1}x{n}, got {beta1_img.shape}")
    if beta2_img.shape != (n, k1):
        raise ValueError(f"second beta grid must be {n}x{k1}, got {beta2_img.shape}")
    x = np.asarray(x, dtype=float)
    if x.shape != (n * n,):
        raise ValueError(f"x must have length {n * n}, got shape {x.shape}")
    X = np.reshape(x, (n, n), order="F")
    data_term = f1m.T @ (alpha_img * (f1m @ X @ f1m.T)) @ f1m
    prior_term = r1m.T @ (beta1_img * (r1m @ X)) + (beta2_img * (X @ r1m.T)) @ r1m
    return np.reshape(data_term + prior_term, -1, order="F")


def matfree_normal_rhs_2d(f1, alpha_img, y_img):
    """Right-hand side F^T A y = vec(F1^T [A~ o Y] F1) for F = F1 (x) F1."""
    f1m = _as_matrix(f1)
    alpha_img = np.asarray(alpha_img, dtype=float)
    y_img = np.asarray(y_img, dtype=float)
    if alpha_img.shape != y_img.shape:
        raise ValueError("alpha grid and data grid must have the same shape")
    return np.reshape(f1m.T @ (alpha_img * y_img) @ f1m, -1, order="F")


def _solve_direct(model, state):
    g, b = assemble_normal_dense(model, state)
    try:
        factor = scipy.linalg.cho_factor(g, lower=True, check_finite=False)
    except scipy.linalg.LinAlgError as exc:
        raise IllPosedModelError(_ILL_POSED_MSG) from exc
    # An exactly singular matrix can still factor, leaving a pivot of
    # rounding-noise size ~sqrt(eps)*scale; treat a collapsed pivot ratio
    # as not positive definite.
    pivots = np.abs(np.diag(factor[0]))
    if not np.all(np.isfinite(pivots)) or pivots.min() <= 1e-7 * pivots.max():
        raise IllPosedModelError(_ILL_POSED_MSG)
    return scipy.linalg.cho_solve(factor, b, check_finite=False)


def update_x(model, state, backend="auto", warm_start=None,
             inner_tol=1e-10, inner_max_iters=50000):
    """Solve (F^T A F + R^T B R) x = F^T A y for the conditional mean of x."""
    if backend in (None, "auto"):
        backend = "direct" if model.n <= DIRECT_SIZE_LIMIT else "gradient-descent"
    if backend == "direct":
        return _solve_direct(model, state)
    matvec, b = _normal_matvec(model, state)
    if backend == "pcg":
        return pcg_solve(matvec, b, x0=warm_start, tol=inner_tol,
                         max_iters=inner_max_iters,
                         diag=_normal_diag(model, state))
    if backend == "gradient-descent":
        return gradient_descent_solve(matvec, b, x0=warm_start, tol=inner_tol,
                                      max_iters=inner_max_iters)
    raise ValueError(f"unknown backend {backend!r}")


def _validate_common_kernel(model):
    try:
        ok = check_common_kernel(model.forward, model.reg)
    except UnsupportedSizeError:
        logger.warning(
            "skipping common-kernel validation at %d unknowns (above the "
            "dense cap); the solver will fail with an ill-posed-model error "
            "if the condition is violated", model.n)
        return
    if not ok:
        raise IllPosedModelError(_ILL_POSED_MSG)


def bcd_solve(model, opts=None):
    """Alternating updates of x, alpha, beta until the x-iterates settle.

    Initializes the precisions to constants, then repeats the x-update
    (warm-started from the previous iterate), the alpha-update from the
    residual, and the beta-update from the increments. Stops when
    ||x_new - x_old|| / max(||x_old||, machine epsilon) <= outer_tol or the
    outer iteration cap is reached.
    """
    if opts is None:
        opts = BcdOptions()
    _validate_common_kernel(model)
    state = model.initial_state(opts.alpha_init, opts.beta_init)
    x_prev = np.zeros(model.n)
    eps = np.finfo(float).eps
    history, data_fit, reg_norm = [], [], []
    converged = False
    for _ in range(opts.max_outer_iters):
        x = update_x(model, state, backend=opts.x_update_backend,
                     warm_start=x_prev, inner_tol=opts.inner_tol,
                     inner_max_iters=opts.inner_max_iters)
        residual = model.forward.apply(x) - model.y
        rx = model.reg.apply(x)
        state = PrecisionState(update_alpha(residual, model.hyper, model.grouping),
                               update_beta(rx, model.hyper))
        rel_change = np.linalg.norm(x - x_prev) / max(np.linalg.norm(x_prev), eps)
        history.append(rel_change)
        data_fit.append(np.linalg.norm(residual))
        reg_norm.append(np.sum(np.abs(rx)))
        x_prev = x
        if rel_change <= opts.outer_tol:
            converged = True
            break
    return BcdResult(x_prev, state, len(history), converged, history,
                     data_fit, reg_norm)
