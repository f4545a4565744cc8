"""Generalized sparse Bayesian learning for linear inverse problems.

Recovers signals with sparse increments from noisy indirect observations
y = F x + noise by pairing Gaussian likelihoods and priors with Gamma
hyper-priors on every precision, then alternating closed-form coordinate
updates. Ships dense and matrix-free operators, three x-update backends,
posterior uncertainty quantification, and a set of built-in experiments.
"""

from .experiments import (EXPERIMENT_NAMES, ConfigError, ExperimentConfig,
                          ExperimentReport, add_noise,
                          canonical_piecewise_signal, default_config,
                          generate_sparse_signal, run_experiment, shepp_logan,
                          snr)
from .model import (GammaHyperPrior, HierarchicalModel, IllPosedModelError,
                    ImproperPriorError, NoiseGrouping, PrecisionState,
                    gamma_log_pdf, log_likelihood, log_prior)
from .operators import (Grid1D, LinearOperator, UnsupportedSizeError,
                        build_anisotropic_2d, build_combined_tv,
                        build_gaussian_convolution, build_separable_2d,
                        build_subsampled_fourier, build_tv1, build_tv2,
                        check_common_kernel, dense_operator,
                        identity_operator, stack_operators)
from .solver import (BcdOptions, BcdResult, bcd_solve, gradient_descent_solve,
                     matfree_normal_matvec_2d, update_alpha, update_beta,
                     update_x)
from .uq import (CredibleBand, PosteriorGaussian, credible_band, log_evidence,
                 posterior_gaussian, sample_posterior)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "EXPERIMENT_NAMES",
    "ConfigError",
    "ExperimentConfig",
    "ExperimentReport",
    "add_noise",
    "canonical_piecewise_signal",
    "default_config",
    "generate_sparse_signal",
    "run_experiment",
    "shepp_logan",
    "snr",
    "GammaHyperPrior",
    "HierarchicalModel",
    "IllPosedModelError",
    "ImproperPriorError",
    "NoiseGrouping",
    "PrecisionState",
    "gamma_log_pdf",
    "log_likelihood",
    "log_prior",
    "Grid1D",
    "LinearOperator",
    "UnsupportedSizeError",
    "build_anisotropic_2d",
    "build_combined_tv",
    "build_gaussian_convolution",
    "build_separable_2d",
    "build_subsampled_fourier",
    "build_tv1",
    "build_tv2",
    "check_common_kernel",
    "dense_operator",
    "identity_operator",
    "stack_operators",
    "BcdOptions",
    "BcdResult",
    "bcd_solve",
    "gradient_descent_solve",
    "matfree_normal_matvec_2d",
    "update_alpha",
    "update_beta",
    "update_x",
    "CredibleBand",
    "PosteriorGaussian",
    "credible_band",
    "log_evidence",
    "posterior_gaussian",
    "sample_posterior",
]
