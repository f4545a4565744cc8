"""Forward and regularization operators, dense and matrix-free.

All 2-D routines use column-major (Fortran) vectorization, so that
``(B ⊗ A) vec(X) = vec(A X B^T)`` holds with ``vec`` stacking columns.
Every operator carries an explicit adjoint; ``to_dense`` is available for
desk-scale validation and debugging.
"""

import numpy as np

__all__ = [
    "LinearOperator",
    "Grid1D",
    "UnsupportedSizeError",
    "identity_operator",
    "dense_operator",
    "build_gaussian_convolution",
    "build_tv1",
    "build_tv2",
    "build_combined_tv",
    "build_separable_2d",
    "build_anisotropic_2d",
    "build_subsampled_fourier",
    "stack_operators",
    "check_common_kernel",
    "DENSE_VALIDATION_CAP",
]

# Largest column count for which dense materialization / SVD validation is
# attempted. Above this, kernel validation is skipped with a warning.
DENSE_VALIDATION_CAP = 2048


class UnsupportedSizeError(Exception):
    """Raised when a dense-only validation is requested above the size cap."""


class LinearOperator:
    """A linear map with explicit adjoint and optional dense form.

    Parameters
    ----------
    rows, cols : int
        Output and input dimensions.
    apply_fn : callable
        Maps a length-``cols`` vector to a length-``rows`` vector.
    adjoint_fn : callable
        Maps a length-``rows`` vector to a length-``cols`` vector.
    kind : str
        Tag describing the construction (``dense``, ``convolution``,
        ``fourier-subsampled``, ``kron-separable``, ``stacked``, ``tv1``,
        ``tv2``, ``combined-tv``, ``aniso-2d``, ``identity``).
    dense : ndarray, optional
        Materialized matrix, when cheaply available.
    block_sizes : list of int, optional
        Row-block boundaries (stacked operators); used for grouped noise.
    """

    def __init__(self, rows, cols, apply_fn, adjoint_fn, kind, dense=None,
                 block_sizes=None, dense_builder=None):
        self.rows = int(rows)
        self.cols = int(cols)
        self._apply = apply_fn
        self._adjoint = adjoint_fn
        self.kind = kind
        self._dense = dense
        self._dense_builder = dense_builder
        self.block_sizes = list(block_sizes) if block_sizes is not None else None

    @property
    def shape(self):
        return (self.rows, self.cols)

    def apply(self, u):
        u = np.asarray(u, dtype=float)
        if u.shape != (self.cols,):
            raise ValueError(
                f"apply expects a vector of length {self.cols}, got shape {u.shape}")
        return self._apply(u)

    def adjoint_apply(self, v):
        v = np.asarray(v, dtype=float)
        if v.shape != (self.rows,):
            raise ValueError(
                f"adjoint_apply expects a vector of length {self.rows}, got shape {v.shape}")
        return self._adjoint(v)

    def to_dense(self, max_cols=None):
        """Materialize the matrix, assembling column-by-column if needed.

        Raises UnsupportedSizeError above ``max_cols`` (default: the module
        validation cap) unless a dense form is already stored.
        """
        if self._dense is not None:
            return self._dense
        cap = DENSE_VALIDATION_CAP if max_cols is None else max_cols
        if self.cols > cap:
            raise UnsupportedSizeError(
                f"operator has {self.cols} columns, above the dense cap {cap}; "
                "skip dense validation at this size")
        if self._dense_builder is not None:
            return self._dense_builder()
        cols = np.empty((self.rows, self.cols))
        e = np.zeros(self.cols)
        for j in range(self.cols):
            e[j] = 1.0
            cols[:, j] = self._apply(e)
            e[j] = 0.0
        return cols

    def normal_diag(self, weights):
        """diag(A^T diag(weights) A), or None when no cheap formula exists.

        Used as a Jacobi preconditioner for the normal equations.
        """
        w = np.asarray(weights, dtype=float)
        if self._dense is not None:
            return np.einsum("ij,i,ij->j", self._dense, w, self._dense)
        return None


class Grid1D:
    """Equidistant grid of n cells on [0, 1] with spacing h = 1/n."""

    def __init__(self, n):
        if n < 1:
            raise ValueError("grid needs at least one cell")
        self.n = int(n)

    @property
    def h(self):
        return 1.0 / self.n

    def midpoints(self):
        return (np.arange(self.n) + 0.5) * self.h


def identity_operator(n):
    if n < 1:
        raise ValueError("n must be positive")
    op = LinearOperator(n, n, lambda u: u.copy(), lambda v: v.copy(),
                        "identity", dense_builder=lambda: np.eye(n))
    op.normal_diag = lambda w: np.array(w, dtype=float)
    return op


def dense_operator(mat, kind="dense"):
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2:
        raise ValueError("dense operator needs a 2-D array")
    return LinearOperator(mat.shape[0], mat.shape[1],
                          lambda u: mat @ u, lambda v: mat.T @ v,
                          kind, dense=mat)


def build_gaussian_convolution(n, gamma):
    """Midpoint-rule discretization of Gaussian convolution on [0, 1].

    Entries are [F]_ij = h * k(h*(i-j)) with k(s) = exp(-s^2/(2 gamma^2)) /
    (2 pi gamma^2), truncated at the matrix boundary (no wrap-around).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    h = Grid1D(n).h
    idx = np.arange(n)
    s = h * (idx[:, None] - idx[None, :])
    kernel = np.exp(-(s ** 2) / (2.0 * gamma ** 2)) / (2.0 * np.pi * gamma ** 2)
    return dense_operator(h * kernel, kind="convolution")


def build_tv1(n):
    """First-difference operator, (n-1) x n, rows (-1, +1)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    mat = np.zeros((n - 1, n))
    rng = np.arange(n - 1)
    mat[rng, rng] = -1.0
    mat[rng, rng + 1] = 1.0
    return dense_operator(mat, kind="tv1")


def build_tv2(n):
    """Second-difference operator, (n-2) x n, stencil (-1, 2, -1)."""
    if n < 3:
        raise ValueError("n must be at least 3")
    mat = np.zeros((n - 2, n))
    rng = np.arange(n - 2)
    mat[rng, rng] = -1.0
    mat[rng, rng + 1] = 2.0
    mat[rng, rng + 2] = -1.0
    return dense_operator(mat, kind="tv2")


def build_combined_tv(n):
    """First differences on the left half, second differences on the right.

    For even n >= 6: (n/2 - 1) first-difference rows on samples 1..n/2
    followed by (n/2 - 2) second-difference rows on samples n/2+1..n,
    giving n - 3 rows total. The seam carries no coupling row, so any
    signal that is constant on the first half and affine on the second
    half (jump at the seam allowed) lies in the kernel.
    """
    if n < 6 or n % 2 != 0:
        raise ValueError("n must be even and at least 6")
    q = n // 2
    mat = np.zeros((n - 3, n))
    r1 = np.arange(q - 1)
    mat[r1, r1] = -1.0
    mat[r1, r1 + 1] = 1.0
    r2 = np.arange(q - 2)
    mat[q - 1 + r2, q + r2] = -1.0
    mat[q - 1 + r2, q + r2 + 1] = 2.0
    mat[q - 1 + r2, q + r2 + 2] = -1.0
    return dense_operator(mat, kind="combined-tv")


def _unvec(x, rows, cols):
    return np.reshape(x, (rows, cols), order="F")


def _vec(mat):
    return np.reshape(mat, -1, order="F")


def build_separable_2d(f1, n):
    """Kronecker-squared operator F1 (x) F1 acting on vectorized n x n images.

    apply(x) = vec(F1 X F1^T); the n^2 x n^2 matrix is never formed.
    """
    if f1.shape != (n, n):
        raise ValueError(f"f1 must be {n}x{n}, got {f1.shape}")
    f1_mat = f1.to_dense()

    def apply_fn(x):
        X = _unvec(x, n, n)
        return _vec(f1_mat @ X @ f1_mat.T)

    def adjoint_fn(y):
        Y = _unvec(y, n, n)
        return _vec(f1_mat.T @ Y @ f1_mat)

    op = LinearOperator(n * n, n * n, apply_fn, adjoint_fn, "kron-separable",
                        dense_builder=lambda: np.kron(f1_mat, f1_mat))
    op.factor_1d = f1_mat
    op.grid_n = n

    def normal_diag(weights):
        # diag((F1(x)F1)^T W (F1(x)F1))[p1,p2] = ((F1∘F1)^T W~ (F1∘F1))[p1,p2]
        W = _unvec(np.asarray(weights, dtype=float), n, n)
        sq = f1_mat * f1_mat
        return _vec(sq.T @ W @ sq)

    op.normal_diag = normal_diag
    return op


def build_anisotropic_2d(r1, n):
    """Anisotropic stack [I (x) R1; R1 (x) I] on vectorized n x n images.

    First output block is vec(R1 X) (columns filtered), second is
    vec(X R1^T) (rows filtered).
    """
    k1 = r1.rows
    if r1.cols != n or k1 >= n:
        raise ValueError(f"r1 must be k x {n} with k < {n}, got {r1.shape}")
    r1_mat = r1.to_dense()
    block = n * k1

    def apply_fn(x):
        X = _unvec(x, n, n)
        return np.concatenate([_vec(r1_mat @ X), _vec(X @ r1_mat.T)])

    def adjoint_fn(v):
        V1 = _unvec(v[:block], k1, n)
        V2 = _unvec(v[block:], n, k1)
        return _vec(r1_mat.T @ V1 + V2 @ r1_mat)

    def build_dense():
        eye = np.eye(n)
        return np.vstack([np.kron(eye, r1_mat), np.kron(r1_mat, eye)])

    op = LinearOperator(2 * block, n * n, apply_fn, adjoint_fn, "aniso-2d",
                        block_sizes=[block, block], dense_builder=build_dense)
    op.factor_1d = r1_mat
    op.grid_n = n

    def normal_diag(weights):
        w = np.asarray(weights, dtype=float)
        W1 = _unvec(w[:block], k1, n)
        W2 = _unvec(w[block:], n, k1)
        sq = r1_mat * r1_mat
        return _vec(sq.T @ W1 + W2 @ sq)

    op.normal_diag = normal_diag
    return op


def build_subsampled_fourier(n, removed):
    """Real-stacked, row-subsampled 2-D unitary DFT.

    The 1-D DFT matrix (unitary convention, 1/sqrt(n)) has the 1-based rows
    in ``removed`` deleted, is Kronecker-squared, and the result is split
    into stacked real and imaginary parts: shape 2*m_r^2 x n^2 with
    m_r = n - len(removed).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    removed = sorted(set(int(r) for r in removed))
    if removed and (removed[0] < 1 or removed[-1] > n):
        raise ValueError(f"removed indices must lie in 1..{n}")
    keep = np.setdiff1d(np.arange(n), np.array(removed, dtype=int) - 1)
    m_r = keep.size
    j = np.arange(n)
    dft = np.exp(-2j * np.pi * np.outer(j, j) / n) / np.sqrt(n)
    f1 = dft[keep, :]  # m_r x n complex
    m2 = m_r * m_r

    def apply_fn(x):
        X = _unvec(x, n, n)
        Y = f1 @ X @ f1.T
        y = _vec(Y)
        return np.concatenate([y.real, y.imag])

    def adjoint_fn(v):
        W = _unvec(v[:m2] - 1j * v[m2:], m_r, m_r)
        return _vec(f1.T @ W @ f1).real

    def build_dense():
        g = np.kron(f1, f1)
        return np.vstack([g.real, g.imag])

    op = LinearOperator(2 * m2, n * n, apply_fn, adjoint_fn,
                        "fourier-subsampled", block_sizes=[m2, m2],
                        dense_builder=build_dense)
    op.factor_1d = f1
    op.grid_n = n
    op.removed = removed

    def normal_diag(weights):
        # Every column of the real-stacked operator has squared norm
        # (m_r/n)^2, so for near-uniform weights the exact diagonal of
        # A^T diag(w) A is close to mean(w) * (m_r/n)^2. Good enough for a
        # Jacobi preconditioner; not exact for strongly varying weights.
        w = np.asarray(weights, dtype=float)
        return np.full(n * n, float(np.mean(w)) * (m_r / n) ** 2)

    op.normal_diag = normal_diag
    return op


def stack_operators(ops):
    """Stack operators row-wise; block boundaries are recorded for grouping."""
    ops = list(ops)
    if not ops:
        raise ValueError("need at least one operator")
    cols = ops[0].cols
    for op in ops:
        if op.cols != cols:
            raise ValueError(
                f"column counts differ: {[o.cols for o in ops]}")
    sizes = [op.rows for op in ops]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    rows = int(offsets[-1])

    def apply_fn(u):
        return np.concatenate([op.apply(u) for op in ops])

    def adjoint_fn(v):
        out = np.zeros(cols)
        for op, a, b in zip(ops, offsets[:-1], offsets[1:]):
            out += op.adjoint_apply(v[a:b])
        return out

    dense = None
    if all(op._dense is not None for op in ops):
        dense = np.vstack([op._dense for op in ops])

    def build_dense():
        return np.vstack([op.to_dense() for op in ops])

    stacked = LinearOperator(rows, cols, apply_fn, adjoint_fn, "stacked",
                             dense=dense, block_sizes=sizes,
                             dense_builder=build_dense)
    stacked.blocks = ops

    def normal_diag(weights):
        w = np.asarray(weights, dtype=float)
        out = np.zeros(cols)
        for op, a, b in zip(ops, offsets[:-1], offsets[1:]):
            d = op.normal_diag(w[a:b])
            if d is None:
                return None
            out += d
        return out

    stacked.normal_diag = normal_diag
    return stacked


def check_common_kernel(f, r, tol=1e-10, max_cols=None):
    """True iff ker(F) and ker(R) intersect only in {0}, at tolerance tol.

    Checks that the smallest singular value of the stacked dense [F; R]
    exceeds tol times the largest. Desk-scale only; raises
    UnsupportedSizeError above the dense cap so callers can skip validation.
    """
    if f.cols != r.cols:
        raise ValueError("operators must share their column count")
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    cap = DENSE_VALIDATION_CAP if max_cols is None else max_cols
    if f.cols > cap:
        raise UnsupportedSizeError(
            f"common-kernel check needs dense materialization; {f.cols} columns "
            f"exceeds the cap {cap}. Skip validation at this size.")
    stackmat = np.vstack([f.to_dense(max_cols=cap), r.to_dense(max_cols=cap)])
    svals = np.linalg.svd(stackmat, compute_uv=False)
    return bool(svals[-1] > tol * svals[0])
