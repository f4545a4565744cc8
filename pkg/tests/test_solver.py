"""Unit tests for the coordinate-descent solver and its backends."""

import numpy as np
import pytest

from gsbl.model import (GammaHyperPrior, HierarchicalModel,
                        IllPosedModelError, NoiseGrouping, PrecisionState)
from gsbl.operators import (build_gaussian_convolution, build_tv1, build_tv2,
                            dense_operator, identity_operator)
from gsbl.solver import (BcdOptions, bcd_solve, gradient_descent_solve,
                         matfree_normal_matvec_2d, update_alpha, update_beta,
                         update_x)

from oracles import dense_normal_matvec_2d, textbook_bcd


def random_model(m, n, seed, reg="tv1"):
    rng = np.random.default_rng(seed)
    f = dense_operator(rng.standard_normal((m, n)))
    r = build_tv1(n) if reg == "tv1" else identity_operator(n)
    y = rng.standard_normal(m)
    return HierarchicalModel(y, f, r)


class TestUpdateAlpha:
    def test_zero_residual(self):
        hyper = GammaHyperPrior(1.0, 1e-4)
        got = update_alpha(np.zeros(3), hyper, NoiseGrouping.per_entry())
        np.testing.assert_array_equal(got, np.full(3, 15000.0))

    def test_unit_residual_small_rate(self):
        hyper = GammaHyperPrior(1.0, 1e-12)
        got = update_alpha(np.array([1.0]), hyper, NoiseGrouping.per_entry())
        np.testing.assert_allclose(got, [3.0], rtol=1e-11)

    def test_scalar_mode(self):
        # Frozen arithmetic: (40 + 2) / (0.4 + 2e-4).
        rng = np.random.default_rng(0)
        r = rng.standard_normal(40)
        r *= np.sqrt(0.4) / np.linalg.norm(r)
        got = update_alpha(r, GammaHyperPrior(1.0, 1e-4),
                           NoiseGrouping.scalar())
        np.testing.assert_allclose(got, np.full(40, 104.94752623688155),
                                   rtol=1e-12)

    def test_grouped_mode(self):
        residual = np.array([1.0, 1.0, 0.0, 2.0])
        hyper = GammaHyperPrior(1.0, 1e-2)
        got = update_alpha(residual, hyper, NoiseGrouping.grouped([3, 1]))
        expected_a = (3 + 2.0) / (2.0 + 2e-2)
        expected_b = (1 + 2.0) / (4.0 + 2e-2)
        np.testing.assert_allclose(got, [expected_a] * 3 + [expected_b])


class TestUpdateBeta:
    def test_zero_increment(self):
        got = update_beta(np.zeros(4), GammaHyperPrior(1.0, 1e-2))
        np.testing.assert_array_equal(got, np.full(4, 150.0))

    def test_unit_increment(self):
        got = update_beta(np.array([1.0]), GammaHyperPrior(1.0, 1e-4))
        np.testing.assert_allclose(got, [2.9994001199760048], rtol=1e-13)

    def test_monotone_decreasing_in_increment(self):
        rx = np.array([0.0, 0.1, 0.5, 1.0, 4.0])
        got = update_beta(rx, GammaHyperPrior())
        assert np.all(np.diff(got) < 0)


class TestUpdateX:
    def test_diagonal_blend(self):
        n = 6
        y = np.arange(1.0, n + 1)
        model = HierarchicalModel(y, identity_operator(n),
                                  identity_operator(n))
        state = PrecisionState.constant(n, n, alpha=3.0, beta=1.0)
        np.testing.assert_allclose(update_x(model, state), 0.75 * y,
                                   rtol=1e-13)
        state = PrecisionState.constant(n, n, alpha=2.0, beta=2.0)
        np.testing.assert_allclose(update_x(model, state), 0.5 * y,
                                   rtol=1e-13)

    def test_zero_data(self):
        model = HierarchicalModel(np.zeros(5), identity_operator(5),
                                  build_tv1(5))
        x = update_x(model, model.initial_state())
        np.testing.assert_array_equal(x, np.zeros(5))

    @pytest.mark.parametrize("backend", ["pcg", "gradient-descent"])
    def test_backends_match_direct(self, backend):
        model = random_model(8, 8, seed=3)
        rng = np.random.default_rng(4)
        state = PrecisionState(rng.uniform(0.5, 2.0, 8),
                               rng.uniform(0.5, 2.0, 7))
        ref = update_x(model, state, backend="direct")
        got = update_x(model, state, backend=backend, inner_tol=1e-14)
        np.testing.assert_allclose(got, ref, rtol=1e-8)

    def test_ill_posed_detected(self):
        # First differences in both roles share the constant kernel.
        model = HierarchicalModel(np.zeros(4), build_tv1(5), build_tv1(5))
        with pytest.raises(IllPosedModelError):
            update_x(model, model.initial_state())

    def test_unknown_backend_rejected(self):
        model = random_model(5, 5, seed=5)
        with pytest.raises(ValueError):
            update_x(model, model.initial_state(), backend="lbfgs")


class TestGradientDescent:
    def test_identity_converges_in_one_step(self):
        b = np.array([2.0, -1.0, 0.5])
        steps = []
        x = gradient_descent_solve(lambda v: v, b,
                                   callback=lambda i, r, gr, g:
                                   steps.append(g))
        np.testing.assert_array_equal(x, b)
        assert steps == [1.0]

    def test_diagonal_system(self):
        matvec = lambda v: np.array([1.0, 2.0]) * v
        x = gradient_descent_solve(matvec, np.array([1.0, 2.0]), tol=1e-14)
        np.testing.assert_allclose(x, [1.0, 1.0], rtol=1e-12)

    def test_random_spd_matches_direct(self):
        rng = np.random.default_rng(6)
        a = rng.standard_normal((8, 8))
        g = a @ a.T + 8 * np.eye(8)
        b = rng.standard_normal(8)
        x = gradient_descent_solve(lambda v: g @ v, b, tol=1e-12)
        np.testing.assert_allclose(x, np.linalg.solve(g, b), rtol=1e-8)

    def test_step_size_formula_logged(self):
        rng = np.random.default_rng(7)
        a = rng.standard_normal((6, 6))
        g = a @ a.T + 6 * np.eye(6)
        b = rng.standard_normal(6)
        seen = []

        def check(iteration, r, gr, gamma):
            assert gamma == (r @ r) / (r @ gr)
            np.testing.assert_allclose(gr, g @ r, rtol=1e-13)
            seen.append(iteration)

        gradient_descent_solve(lambda v: g @ v, b, tol=1e-10, callback=check)
        assert seen == list(range(1, len(seen) + 1))

    def test_indefinite_raises(self):
        g = np.diag([1.0, -1.0])
        with pytest.raises(IllPosedModelError):
            gradient_descent_solve(lambda v: g @ v, np.array([0.0, 1.0]))


class TestMatfree2D:
    def test_zero_input(self):
        n = 4
        f1 = np.random.default_rng(8).standard_normal((n, n))
        r1 = build_tv1(n).to_dense()
        out = matfree_normal_matvec_2d(f1, r1, np.ones((n, n)),
                                       np.ones((n - 1, n)),
                                       np.ones((n, n - 1)), np.zeros(n * n))
        np.testing.assert_array_equal(out, np.zeros(n * n))

    def test_pure_data_term(self):
        rng = np.random.default_rng(9)
        n = 5
        f1 = rng.standard_normal((n, n))
        r1 = build_tv1(n).to_dense()
        x = rng.standard_normal(n * n)
        out = matfree_normal_matvec_2d(f1, r1, np.ones((n, n)),
                                       np.zeros((n - 1, n)),
                                       np.zeros((n, n - 1)), x)
        img = np.reshape(x, (n, n), order="F")
        expected = f1.T @ (f1 @ img @ f1.T) @ f1
        np.testing.assert_allclose(out, np.reshape(expected, -1, order="F"),
                                   atol=1e-12)

    def test_matches_dense_oracle(self):
        rng = np.random.default_rng(10)
        n = 6
        f1 = rng.standard_normal((n, n))
        r1 = build_tv1(n).to_dense()
        alpha = rng.uniform(0.5, 2.0, (n, n))
        beta1 = rng.uniform(0.5, 2.0, (n - 1, n))
        beta2 = rng.uniform(0.5, 2.0, (n, n - 1))
        x = rng.standard_normal(n * n)
        got = matfree_normal_matvec_2d(f1, r1, alpha, beta1, beta2, x)
        want = dense_normal_matvec_2d(f1, r1, alpha, beta1, beta2, x)
        np.testing.assert_allclose(got, want, atol=1e-11)

    def test_shape_validation(self):
        n = 4
        f1 = np.eye(n)
        r1 = build_tv1(n).to_dense()
        with pytest.raises(ValueError):
            matfree_normal_matvec_2d(f1, r1, np.ones((n, n)),
                                     np.ones((n, n)), np.ones((n, n - 1)),
                                     np.zeros(n * n))


class TestBcdSolve:
    def test_zero_data_fixed_point(self):
        model = HierarchicalModel(np.zeros(6), identity_operator(6),
                                  build_tv1(6))
        result = bcd_solve(model)
        np.testing.assert_array_equal(result.x, np.zeros(6))
        assert result.converged
        assert result.iterations == 1

    def test_noiseless_denoising_recovers_data(self):
        rng = np.random.default_rng(12)
        x_true = np.zeros(20)
        x_true[rng.choice(20, 4, replace=False)] = 1.0
        model = HierarchicalModel(x_true.copy(), identity_operator(20),
                                  identity_operator(20),
                                  grouping=NoiseGrouping.scalar())
        result = bcd_solve(model)
        err = np.linalg.norm(result.x - x_true) / np.linalg.norm(x_true)
        assert err <= 1e-3

    @pytest.mark.parametrize("grouping,blocks", [
        ("per-entry", None),
        ("scalar", None),
        ("grouped", [6, 4]),
    ])
    def test_iterates_match_textbook_oracle(self, grouping, blocks):
        rng = np.random.default_rng(13)
        m, n = 10, 9
        f = rng.standard_normal((m, n))
        r = build_tv1(n)
        y = rng.standard_normal(m)
        hyper = GammaHyperPrior(1.0, 1e-3)
        if grouping == "grouped":
            group = NoiseGrouping.grouped(blocks)
            sizes = blocks
        else:
            group = NoiseGrouping(grouping)
            sizes = group.block_sizes(m)
        model = HierarchicalModel(y, dense_operator(f), r, hyper, group)
        opts = BcdOptions(max_outer_iters=25, outer_tol=0.0)
        result = bcd_solve(model, opts)
        iterates, alpha, beta = textbook_bcd(y, f, r.to_dense(), 1.0, 1e-3,
                                             block_sizes=sizes, max_iters=25,
                                             tol=0.0)
        assert result.iterations == len(iterates)
        np.testing.assert_allclose(result.x, iterates[-1], rtol=1e-8)
        np.testing.assert_allclose(result.state.alpha, alpha, rtol=1e-8)
        np.testing.assert_allclose(result.state.beta, beta, rtol=1e-8)

    def test_history_lengths(self):
        model = random_model(12, 10, seed=14)
        result = bcd_solve(model, BcdOptions(max_outer_iters=7,
                                             outer_tol=0.0))
        assert result.iterations == 7
        assert not result.converged
        assert len(result.history) == 7
        assert len(result.data_fit) == 7
        assert len(result.reg_norm) == 7

    def test_ill_posed_model_raises(self):
        model = HierarchicalModel(np.zeros(7), build_tv1(8), build_tv1(8))
        with pytest.raises(IllPosedModelError):
            bcd_solve(model)

    def test_convolution_deblur_smoke(self):
        n = 30
        rng = np.random.default_rng(15)
        f = build_gaussian_convolution(n, 3e-2)
        t = (np.arange(n) + 0.5) / n
        x_true = np.where(t < 0.5, 1.0, 0.0)
        y = f.apply(x_true) + 0.05 * rng.standard_normal(n)
        model = HierarchicalModel(y, f, build_tv1(n),
                                  grouping=NoiseGrouping.scalar())
        result = bcd_solve(model)
        assert result.converged
        err = np.linalg.norm(result.x - x_true) / np.linalg.norm(x_true)
        assert err < 0.1


class TestBcdOptions:
    def test_validation(self):
        with pytest.raises(ValueError):
            BcdOptions(max_outer_iters=0)
        with pytest.raises(ValueError):
            BcdOptions(outer_tol=-1.0)
        with pytest.raises(ValueError):
            BcdOptions(x_update_backend="newton")

    def test_defaults(self):
        opts = BcdOptions()
        assert opts.max_outer_iters == 1000
        assert opts.outer_tol == 1e-6
        assert opts.x_update_backend == "auto"
