"""Capacity bounds for single-mode bosonic Gaussian-noise channels."""

from .bounds import (
    BoundSet,
    amplifier_general_upper,
    evaluate_bound_set,
    general_upper,
    holevo_thermal,
    log_sum_upper,
    min_output_entropy_thermal,
    noiseless_capacity,
    pure_loss_capacity,
    sk_upper,
)
from .channels import (
    Amplifier,
    Beamsplitter,
    ChannelSpec,
    amplifier_output_cov,
    beamsplitter_output_cov,
    output_mean_photon,
)
from .symplectic import (
    OMEGA,
    VACUUM,
    AsymmetricCovarianceError,
    CovarianceMatrix,
    EulerDecomposition,
    GaussianStateError,
    InvalidArgumentError,
    InvalidStateError,
    NoiseSpec,
    NotPositiveDefiniteError,
    SubHeisenbergError,
    compose_euler,
    g,
    gaussian_entropy,
    general_noise_cov,
    mean_photon_number,
    rotation_matrix,
    squeeze_matrix,
    symplectic_eigenvalue,
    thermal_cov,
    validate_cov,
)

__version__ = "0.1.0"
