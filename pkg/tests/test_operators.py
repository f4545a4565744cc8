"""Unit tests for the operator constructors."""

import numpy as np
import pytest

from gsbl.operators import (Grid1D, UnsupportedSizeError,
                            build_anisotropic_2d, build_combined_tv,
                            build_gaussian_convolution, build_separable_2d,
                            build_subsampled_fourier, build_tv1, build_tv2,
                            check_common_kernel, dense_operator,
                            identity_operator, stack_operators)

RNG = np.random.default_rng


def adjoint_gap(op, rng):
    """Max |<Fx, y> - <x, F^T y>| over a few random probes."""
    gaps = []
    for _ in range(5):
        x = rng.standard_normal(op.cols)
        y = rng.standard_normal(op.rows)
        gaps.append(abs(op.apply(x) @ y - x @ op.adjoint_apply(y)))
    return max(gaps)


class TestGrid1D:
    def test_spacing_and_midpoints(self):
        grid = Grid1D(4)
        assert grid.h == 0.25
        np.testing.assert_allclose(grid.midpoints(),
                                   [0.125, 0.375, 0.625, 0.875])


class TestGaussianConvolution:
    def test_diagonal_entry(self):
        # Frozen scalar evaluation: 0.025 / (2*pi*9e-4) at n=40, gamma=3e-2.
        dense = build_gaussian_convolution(40, 3e-2).to_dense()
        np.testing.assert_allclose(dense[17, 17], 4.420970641441538,
                                   rtol=1e-13)

    def test_interior_row_sum(self):
        # Frozen midpoint-rule value, approximately 1/(gamma*sqrt(2*pi)).
        dense = build_gaussian_convolution(40, 3e-2).to_dense()
        np.testing.assert_allclose(dense[20, :].sum(), 13.298076013393121,
                                   rtol=1e-12)
        np.testing.assert_allclose(dense[20, :].sum(),
                                   1.0 / (3e-2 * np.sqrt(2 * np.pi)),
                                   rtol=1e-4)

    def test_symmetric_toeplitz(self):
        dense = build_gaussian_convolution(17, 5e-2).to_dense()
        np.testing.assert_array_equal(dense, dense.T)
        for off in range(1, 5):
            diag = np.diagonal(dense, offset=off)
            np.testing.assert_array_equal(diag, diag[0] * np.ones(len(diag)))

    def test_apply_matches_dense(self):
        rng = RNG(3)
        op = build_gaussian_convolution(23, 4e-2)
        x = rng.standard_normal(23)
        np.testing.assert_allclose(op.apply(x), op.to_dense() @ x, rtol=1e-14)
        assert adjoint_gap(op, rng) < 1e-12

    def test_rejects_bad_gamma(self):
        with pytest.raises(ValueError):
            build_gaussian_convolution(10, 0.0)


class TestDifferences:
    def test_tv1_constant_in_kernel(self):
        op = build_tv1(9)
        assert op.rows == 8
        np.testing.assert_array_equal(op.apply(np.full(9, 3.7)), np.zeros(8))

    def test_tv1_direct_values(self):
        np.testing.assert_array_equal(build_tv1(3).apply([0.0, 1.0, 3.0]),
                                      [1.0, 2.0])

    def test_tv1_rank(self):
        assert np.linalg.matrix_rank(build_tv1(12).to_dense()) == 11

    def test_tv2_ramp_in_kernel(self):
        op = build_tv2(10)
        ramp = 0.3 + 1.7 * np.arange(10)
        np.testing.assert_allclose(op.apply(ramp), np.zeros(8), atol=1e-13)

    def test_tv2_direct_values(self):
        np.testing.assert_array_equal(build_tv2(4).apply([0.0, 0.0, 1.0, 0.0]),
                                      [-1.0, 2.0])

    def test_tv2_rank(self):
        assert np.linalg.matrix_rank(build_tv2(12).to_dense()) == 10


class TestCombinedTv:
    def test_shape(self):
        op = build_combined_tv(20)
        assert (op.rows, op.cols) == (17, 20)

    def test_piecewise_kernel(self):
        # Constant on the first half, affine on the second half.
        x = np.concatenate([np.full(10, 2.2), 0.4 - 0.3 * np.arange(10)])
        np.testing.assert_allclose(build_combined_tv(20).apply(x),
                                   np.zeros(17), atol=1e-13)

    def test_explicit_rows_n6(self):
        dense = build_combined_tv(6).to_dense()
        expected = np.array([
            [-1.0, 1.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, -1.0, 1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0, 2.0, -1.0],
        ])
        np.testing.assert_array_equal(dense, expected)


class TestSeparable2D:
    def test_identity_factor(self):
        op = build_separable_2d(identity_operator(5), 5)
        x = RNG(0).standard_normal(25)
        np.testing.assert_array_equal(op.apply(x), x)

    def test_matches_dense_kron(self):
        rng = RNG(1)
        f1 = dense_operator(rng.standard_normal((4, 4)))
        op = build_separable_2d(f1, 4)
        kron = np.kron(f1.to_dense(), f1.to_dense())
        x = rng.standard_normal(16)
        np.testing.assert_allclose(op.apply(x), kron @ x, atol=1e-12)
        np.testing.assert_allclose(op.to_dense(), kron, atol=1e-14)
        assert adjoint_gap(op, rng) < 1e-12

    def test_rank_one_factorization(self):
        rng = RNG(2)
        f1 = dense_operator(rng.standard_normal((6, 6)))
        op = build_separable_2d(f1, 6)
        u, v = rng.standard_normal(6), rng.standard_normal(6)
        lhs = op.apply(np.reshape(np.outer(u, v), -1, order="F"))
        rhs = np.reshape(np.outer(f1.apply(u), f1.apply(v)), -1, order="F")
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)


class TestAnisotropic2D:
    def test_output_length(self):
        op = build_anisotropic_2d(build_tv2(4), 4)
        assert op.rows == 16
        assert op.block_sizes == [8, 8]

    def test_constant_image_kernel(self):
        op = build_anisotropic_2d(build_tv1(5), 5)
        np.testing.assert_array_equal(op.apply(np.full(25, 1.3)),
                                      np.zeros(op.rows))

    def test_matches_dense_oracle(self):
        rng = RNG(4)
        r1 = build_tv1(4)
        op = build_anisotropic_2d(r1, 4)
        eye = np.eye(4)
        dense = np.vstack([np.kron(eye, r1.to_dense()),
                           np.kron(r1.to_dense(), eye)])
        x = rng.standard_normal(16)
        np.testing.assert_allclose(op.apply(x), dense @ x, atol=1e-12)
        np.testing.assert_allclose(op.to_dense(), dense, atol=1e-14)
        assert adjoint_gap(op, rng) < 1e-12


class TestSubsampledFourier:
    def test_shape_with_removals(self):
        op = build_subsampled_fourier(8, [3, 5])
        assert (op.rows, op.cols) == (72, 64)

    def test_full_operator_is_isometry(self):
        op = build_subsampled_fourier(6, [])
        dense = op.to_dense()
        np.testing.assert_allclose(dense.T @ dense, np.eye(36), atol=1e-12)

    def test_zero_maps_to_zero(self):
        op = build_subsampled_fourier(8, [2])
        np.testing.assert_array_equal(op.apply(np.zeros(64)),
                                      np.zeros(op.rows))

    def test_apply_matches_dense(self):
        rng = RNG(5)
        op = build_subsampled_fourier(7, [1, 4])
        x = rng.standard_normal(49)
        np.testing.assert_allclose(op.apply(x), op.to_dense() @ x, atol=1e-12)
        assert adjoint_gap(op, rng) < 1e-12

    def test_rejects_out_of_range_removal(self):
        with pytest.raises(ValueError):
            build_subsampled_fourier(8, [0])
        with pytest.raises(ValueError):
            build_subsampled_fourier(8, [9])


class TestStacking:
    def test_duplicated_identity(self):
        op = stack_operators([identity_operator(3), identity_operator(3)])
        assert (op.rows, op.cols) == (6, 3)
        x = np.array([1.0, -2.0, 0.5])
        np.testing.assert_array_equal(op.apply(x), np.concatenate([x, x]))

    def test_block_sizes(self):
        rng = RNG(6)
        top = dense_operator(rng.standard_normal((36, 40)))
        bottom = dense_operator(rng.standard_normal((24, 40)))
        op = stack_operators([top, bottom])
        assert op.rows == 60
        assert op.block_sizes == [36, 24]
        x = rng.standard_normal(40)
        np.testing.assert_array_equal(op.apply(x)[:36], top.apply(x))

    def test_adjoint_sums_blocks(self):
        rng = RNG(7)
        blocks = [dense_operator(rng.standard_normal((5, 8))),
                  dense_operator(rng.standard_normal((3, 8)))]
        op = stack_operators(blocks)
        dense = np.vstack([b.to_dense() for b in blocks])
        y = rng.standard_normal(8)
        np.testing.assert_allclose(op.adjoint_apply(op.apply(y)),
                                   dense.T @ (dense @ y), atol=1e-12)
        assert adjoint_gap(op, rng) < 1e-12


class TestCommonKernel:
    def test_identity_always_well_posed(self):
        assert check_common_kernel(identity_operator(10), build_tv1(10),
                                   1e-10)

    def test_shared_constants_detected(self):
        assert not check_common_kernel(build_tv1(10), build_tv1(10), 1e-10)

    def test_convolution_with_tv1(self):
        f = build_gaussian_convolution(40, 3e-2)
        assert check_common_kernel(f, build_tv1(40), 1e-10)

    def test_size_cap(self):
        big = identity_operator(5000)
        with pytest.raises(UnsupportedSizeError):
            check_common_kernel(big, big, 1e-10)


class TestNormalDiag:
    @pytest.mark.parametrize("make_op", [
        lambda: build_gaussian_convolution(12, 5e-2),
        lambda: build_tv1(12),
        lambda: build_separable_2d(build_gaussian_convolution(4, 8e-2), 4),
        lambda: build_anisotropic_2d(build_tv1(4), 4),
        lambda: stack_operators([build_tv1(12), build_tv2(12)]),
    ])
    def test_matches_dense_diagonal(self, make_op):
        op = make_op()
        rng = RNG(8)
        w = rng.uniform(0.5, 2.0, op.rows)
        got = op.normal_diag(w)
        assert got is not None
        dense = op.to_dense()
        np.testing.assert_allclose(got, np.diag((dense.T * w) @ dense),
                                   atol=1e-12)

    def test_fourier_diag_is_exact_for_uniform_weights(self):
        op = build_subsampled_fourier(6, [2, 4])
        w = np.full(op.rows, 1.7)
        dense = op.to_dense()
        np.testing.assert_allclose(op.normal_diag(w),
                                   np.diag((dense.T * w) @ dense), atol=1e-12)


class TestValidation:
    def test_apply_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            build_tv1(5).apply(np.zeros(6))

    def test_adjoint_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            build_tv1(5).adjoint_apply(np.zeros(5))
