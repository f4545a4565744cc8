"""Unit tests for posterior uncertainty quantification."""

import numpy as np
import pytest

from gsbl.model import (GammaHyperPrior, HierarchicalModel,
                        IllPosedModelError, ImproperPriorError,
                        PrecisionState)
from gsbl.operators import (UnsupportedSizeError, build_tv1, dense_operator,
                            identity_operator)
from gsbl.solver import update_x
from gsbl.uq import (credible_band, log_evidence, posterior_gaussian,
                     sample_posterior)

from oracles import quadrature_log_evidence, sigma_form_log_evidence


def random_model(m, n, seed, invertible_reg=False):
    rng = np.random.default_rng(seed)
    f = dense_operator(rng.standard_normal((m, n)))
    if invertible_reg:
        r = dense_operator(rng.standard_normal((n, n)) + 3 * np.eye(n))
    else:
        r = build_tv1(n)
    y = rng.standard_normal(m)
    return HierarchicalModel(y, f, r)


def random_state(model, seed):
    rng = np.random.default_rng(seed)
    return PrecisionState(rng.uniform(0.5, 2.0, model.m),
                          rng.uniform(0.5, 2.0, model.k))


class TestPosteriorGaussian:
    def test_identity_blend(self):
        y = np.array([2.0, -4.0, 6.0])
        model = HierarchicalModel(y, identity_operator(3),
                                  identity_operator(3))
        post = posterior_gaussian(model, PrecisionState.constant(3, 3))
        np.testing.assert_allclose(post.mean, y / 2, rtol=1e-14)
        np.testing.assert_allclose(post.covariance_diagonal(), np.full(3, 0.5),
                                   rtol=1e-13)

    def test_covariance_matches_dense_inverse(self):
        model = random_model(8, 8, seed=0)
        state = random_state(model, 1)
        post = posterior_gaussian(model, state)
        f = model.forward.to_dense()
        r = model.reg.to_dense()
        g = (f.T * state.alpha) @ f + (r.T * state.beta) @ r
        np.testing.assert_allclose(post.covariance_diagonal(),
                                   np.diag(np.linalg.inv(g)), rtol=1e-9)

    def test_mean_equals_update_x(self):
        model = random_model(10, 7, seed=2)
        state = random_state(model, 3)
        post = posterior_gaussian(model, state)
        np.testing.assert_array_equal(post.mean,
                                      update_x(model, state,
                                               backend="direct"))

    def test_ill_posed_raises(self):
        model = HierarchicalModel(np.zeros(7), build_tv1(8), build_tv1(8))
        with pytest.raises(IllPosedModelError):
            posterior_gaussian(model, model.initial_state())

    def test_size_cap(self):
        n = 4097
        model = HierarchicalModel(np.zeros(n), identity_operator(n),
                                  identity_operator(n))
        with pytest.raises(UnsupportedSizeError):
            posterior_gaussian(model, model.initial_state())


class TestSamplePosterior:
    def test_mean_converges(self):
        model = random_model(6, 4, seed=4)
        state = random_state(model, 5)
        post = posterior_gaussian(model, state)
        draws = sample_posterior(post, 10 ** 5, seed=6)
        assert draws.shape == (10 ** 5, 4)
        sdev = np.sqrt(post.covariance_diagonal())
        gap = np.abs(draws.mean(axis=0) - post.mean)
        assert np.all(gap < 4 * sdev / np.sqrt(10 ** 5))

    def test_covariance_converges(self):
        model = random_model(6, 4, seed=7)
        state = random_state(model, 8)
        post = posterior_gaussian(model, state)
        draws = sample_posterior(post, 10 ** 5, seed=9)
        f = model.forward.to_dense()
        r = model.reg.to_dense()
        g = (f.T * state.alpha) @ f + (r.T * state.beta) @ r
        cov = np.linalg.inv(g)
        sample_cov = np.cov(draws.T)
        np.testing.assert_allclose(sample_cov, cov, rtol=5e-2, atol=5e-2)

    def test_fixed_seed_bit_exact(self):
        model = random_model(5, 5, seed=10)
        post = posterior_gaussian(model, random_state(model, 11))
        a = sample_posterior(post, 16, seed=42)
        b = sample_posterior(post, 16, seed=42)
        np.testing.assert_array_equal(a, b)

    def test_rejects_bad_count(self):
        model = random_model(5, 5, seed=12)
        post = posterior_gaussian(model, random_state(model, 13))
        with pytest.raises(ValueError):
            sample_posterior(post, 0, seed=0)


class TestCredibleBand:
    def test_standard_quantile(self):
        # Frozen two-sided standard-normal quantile at level 0.999.
        model = HierarchicalModel(np.zeros(2), identity_operator(2),
                                  identity_operator(2))
        post = posterior_gaussian(model, PrecisionState.constant(2, 2))
        band = credible_band(post, 0.999)
        half = (band.upper - band.lower) / 2
        np.testing.assert_allclose(half,
                                   3.2905267314919255 * np.sqrt(0.5),
                                   rtol=1e-12)

    def test_scalar_quarter_variance(self):
        model = HierarchicalModel(np.zeros(1), identity_operator(1),
                                  identity_operator(1))
        post = posterior_gaussian(model, PrecisionState(np.array([2.0]),
                                                        np.array([2.0])))
        band = credible_band(post, 0.999)
        np.testing.assert_allclose(band.lower, [-1.6452633657459628],
                                   rtol=1e-12)
        np.testing.assert_allclose(band.upper, [1.6452633657459628],
                                   rtol=1e-12)

    def test_tiny_level_collapses_to_mean(self):
        model = random_model(4, 4, seed=14)
        post = posterior_gaussian(model, random_state(model, 15))
        band = credible_band(post, 1e-12)
        np.testing.assert_allclose(band.lower, post.mean, atol=1e-10)
        np.testing.assert_allclose(band.upper, post.mean, atol=1e-10)

    def test_rejects_bad_level(self):
        model = random_model(4, 4, seed=16)
        post = posterior_gaussian(model, random_state(model, 17))
        for level in (0.0, 1.0, -0.5, 2.0):
            with pytest.raises(ValueError):
                credible_band(post, level)


class TestLogEvidence:
    def test_scalar_value(self):
        model = HierarchicalModel(np.zeros(1), identity_operator(1),
                                  identity_operator(1))
        value = log_evidence(model, PrecisionState.constant(1, 1))
        np.testing.assert_allclose(value, -0.5 * np.log(4 * np.pi),
                                   rtol=1e-14)

    def test_improper_prior_rejected(self):
        model = random_model(6, 6, seed=18, invertible_reg=False)
        with pytest.raises(ImproperPriorError):
            log_evidence(model, model.initial_state())

    def test_rank_deficient_square_reg_rejected(self):
        rng = np.random.default_rng(19)
        r_mat = rng.standard_normal((5, 5))
        r_mat[-1] = r_mat[0] + r_mat[1]
        model = HierarchicalModel(rng.standard_normal(5),
                                  identity_operator(5),
                                  dense_operator(r_mat))
        with pytest.raises(ImproperPriorError):
            log_evidence(model, model.initial_state())

    def test_matches_sigma_form(self):
        model = random_model(7, 5, seed=20, invertible_reg=True)
        state = random_state(model, 21)
        got = log_evidence(model, state)
        want = sigma_form_log_evidence(model.y, model.forward.to_dense(),
                                       model.reg.to_dense(), state.alpha,
                                       state.beta)
        np.testing.assert_allclose(got, want, rtol=1e-10)

    def test_matches_quadrature(self):
        model = random_model(2, 2, seed=22, invertible_reg=True)
        state = random_state(model, 23)
        got = log_evidence(model, state)
        want = quadrature_log_evidence(model.y, model.forward.to_dense(),
                                       model.reg.to_dense(), state.alpha,
                                       state.beta, points=64)
        np.testing.assert_allclose(got, want, rtol=1e-4)
