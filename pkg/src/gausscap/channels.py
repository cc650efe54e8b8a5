"""Covariance-level action of the lossy (beamsplitter) and amplifier channels."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .symplectic import (
    CovarianceMatrix,
    InvalidArgumentError,
    NoiseSpec,
    _finite,
    _non_negative,
    general_noise_cov,
    mean_photon_number,
)


def _check_tau(tau: float) -> float:
    tau = _finite("tau", tau)
    if not 0.0 <= tau <= 1.0:
        raise InvalidArgumentError(f"tau must lie in [0, 1], got {tau!r}")
    return tau


def _check_kappa(kappa: float) -> float:
    kappa = _finite("kappa", kappa)
    if kappa <= 1.0:
        raise InvalidArgumentError(f"kappa must be > 1, got {kappa!r}")
    return kappa


@dataclass(frozen=True)
class Beamsplitter:
    """Lossy channel with transmissivity ``tau`` mixing in ``noise``."""

    tau: float
    noise: NoiseSpec = field(default_factory=lambda: NoiseSpec(0.0))

    def __post_init__(self):
        _check_tau(self.tau)


@dataclass(frozen=True)
class Amplifier:
    """Phase-insensitive amplifier with gain ``kappa`` and environment ``noise``."""

    kappa: float
    noise: NoiseSpec = field(default_factory=lambda: NoiseSpec(0.0))

    def __post_init__(self):
        _check_kappa(self.kappa)


ChannelSpec = Union[Beamsplitter, Amplifier]


def beamsplitter_output_cov(
    v_in: CovarianceMatrix, v_noise: CovarianceMatrix, tau: float
) -> CovarianceMatrix:
    """``tau V_in + (1 - tau) V_noise``."""
    tau = _check_tau(tau)
    return v_in.scaled_sum(tau, v_noise, 1.0 - tau)


def amplifier_output_cov(
    v_in: CovarianceMatrix, v_noise: CovarianceMatrix, kappa: float
) -> CovarianceMatrix:
    """``kappa V_in + (kappa - 1) Z V_noise Z`` with ``Z = diag(1, -1)``.

    The environment enters phase-conjugated (two-mode squeezing dilation).
    """
    kappa = _check_kappa(kappa)
    conj = CovarianceMatrix(v_noise.a, -v_noise.b, v_noise.d)
    return v_in.scaled_sum(kappa, conj, kappa - 1.0)


def output_cov(spec: ChannelSpec, v_in: CovarianceMatrix) -> CovarianceMatrix:
    v_noise = general_noise_cov(spec.noise)
    if isinstance(spec, Beamsplitter):
        return beamsplitter_output_cov(v_in, v_noise, spec.tau)
    if isinstance(spec, Amplifier):
        return amplifier_output_cov(v_in, v_noise, spec.kappa)
    raise InvalidArgumentError(f"unknown channel spec {spec!r}")


def output_mean_photon(spec: ChannelSpec, n_in: float) -> float:
    n_in = _non_negative("n_in", n_in)
    n_env = mean_photon_number(general_noise_cov(spec.noise))
    if isinstance(spec, Beamsplitter):
        return spec.tau * n_in + (1.0 - spec.tau) * n_env
    if isinstance(spec, Amplifier):
        return spec.kappa * n_in + (spec.kappa - 1.0) * (n_env + 1.0)
    raise InvalidArgumentError(f"unknown channel spec {spec!r}")
