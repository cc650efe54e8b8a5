"""Closed-form capacity quantities for single-mode Gaussian-noise channels.

Everything is in nats.  For squeezed noise two environment photon numbers
appear and they are not interchangeable:

* ``n_env = mean_photon_number(V_G)``, the physical environment energy, fixes
  the output energy and hence the maximal-output-entropy term;
* ``(sqrt(det V_G) - 1) / 2 = n_th`` is the determinant parameter entering
  the entropy-power subtraction.

Both coincide for thermal noise (``r = 0``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .channels import Amplifier, Beamsplitter, ChannelSpec, _check_kappa, _check_tau
from .symplectic import (
    InvalidArgumentError,
    NoiseSpec,
    _non_negative,
    g,
    gaussian_entropy,
    general_noise_cov,
    mean_photon_number,
    symplectic_eigenvalue,
)

__all__ = [
    "BoundSet",
    "amplifier_general_upper",
    "evaluate_bound_set",
    "g",
    "general_upper",
    "holevo_thermal",
    "log_sum_upper",
    "min_output_entropy_thermal",
    "noiseless_capacity",
    "pure_loss_capacity",
    "sk_upper",
]


def _noise_photons(noise: NoiseSpec) -> tuple[float, float]:
    """Return ``(n_env, determinant parameter)`` for ``noise``."""
    v = general_noise_cov(noise)
    return mean_photon_number(v), 0.5 * (symplectic_eigenvalue(v) - 1.0)


def noiseless_capacity(n_in: float) -> float:
    return g(n_in)


def pure_loss_capacity(tau: float, n_in: float) -> float:
    tau = _check_tau(tau)
    return g(tau * _non_negative("n_in", n_in))


def holevo_thermal(tau: float, n_in: float, n_env: float) -> float:
    """Coherent-state Holevo capacity of the thermal-noise beamsplitter channel."""
    tau = _check_tau(tau)
    n_in = _non_negative("n_in", n_in)
    n_env = _non_negative("n_env", n_env)
    return g(tau * n_in + (1.0 - tau) * n_env) - g((1.0 - tau) * n_env)


def min_output_entropy_thermal(tau: float, n_env: float) -> float:
    tau = _check_tau(tau)
    return g((1.0 - tau) * _non_negative("n_env", n_env))


def sk_upper(tau: float, n_in: float, n_env: float) -> float:
    """Entropy-power upper bound for thermal noise (Smith-Koenig form)."""
    tau = _check_tau(tau)
    n_in = _non_negative("n_in", n_in)
    n_env = _non_negative("n_env", n_env)
    return g(tau * n_in + (1.0 - tau) * n_env) - (1.0 - tau) * g(n_env)


def general_upper(tau: float, n_in: float, noise: NoiseSpec) -> float:
    """Upper bound for arbitrary single-mode Gaussian noise.

    ``g(tau N + (1 - tau) n_env) - (1 - tau) g((sqrt(det V_G) - 1) / 2)``.
    The formula holds on the open interval; at ``tau = 1`` the value is
    ``g(N)`` and at ``tau = 0`` it is 0 (the channel outputs only noise).
    """
    tau = _check_tau(tau)
    n_in = _non_negative("n_in", n_in)
    if tau == 1.0:
        return g(n_in)
    if tau == 0.0:
        return 0.0
    n_env, n_det = _noise_photons(noise)
    return g(tau * n_in + (1.0 - tau) * n_env) - (1.0 - tau) * g(n_det)


def amplifier_general_upper(kappa: float, n_in: float, noise: NoiseSpec) -> float:
    """Amplifier bound ``g(k N + (k-1)(n_env+1)) - (k-1)/(2k-1) g(n_det)``."""
    kappa = _check_kappa(kappa)
    n_in = _non_negative("n_in", n_in)
    n_env, n_det = _noise_photons(noise)
    prefactor = (kappa - 1.0) / (2.0 * kappa - 1.0)
    return g(kappa * n_in + (kappa - 1.0) * (n_env + 1.0)) - prefactor * g(n_det)


def log_sum_upper(tau: float, n_in: float, noise: NoiseSpec) -> float:
    """``g(tau N + (1 - tau) n_env) - log(tau + (1 - tau) exp(S_noise))``.

    Never above :func:`general_upper` by concavity of the logarithm.  Uses
    the same endpoint values as :func:`general_upper`.
    """
    tau = _check_tau(tau)
    n_in = _non_negative("n_in", n_in)
    if tau == 1.0:
        return g(n_in)
    if tau == 0.0:
        return 0.0
    v = general_noise_cov(noise)
    s_noise = gaussian_entropy(v)
    n_env = mean_photon_number(v)
    # log(tau + (1-tau) e^S) = S + log(1 - tau + tau e^-S), stable for large S
    log_term = s_noise + math.log1p(-tau + tau * math.exp(-s_noise))
    return g(tau * n_in + (1.0 - tau) * n_env) - log_term


@dataclass(frozen=True)
class BoundSet:
    """Every capacity quantity for one ``(channel, n_in)`` point.

    Fields that do not apply to the channel kind are ``None``.
    """

    channel: ChannelSpec
    n_in: float
    n_env: float
    noiseless: float
    max_output_entropy_term: float
    holevo: Optional[float] = None
    min_output_entropy: Optional[float] = None
    sk_upper: Optional[float] = None
    general_upper: Optional[float] = None
    log_sum_upper: Optional[float] = None
    pure_loss: Optional[float] = None
    amplifier_general_upper: Optional[float] = None

    def values(self) -> dict[str, Optional[float]]:
        return {
            "noiseless": self.noiseless,
            "pure_loss": self.pure_loss,
            "holevo": self.holevo,
            "min_output_entropy": self.min_output_entropy,
            "max_output_entropy_term": self.max_output_entropy_term,
            "sk_upper": self.sk_upper,
            "general_upper": self.general_upper,
            "log_sum_upper": self.log_sum_upper,
            "amplifier_general_upper": self.amplifier_general_upper,
        }


def evaluate_bound_set(spec: ChannelSpec, n_in: float) -> BoundSet:
    n_in = _non_negative("n_in", n_in)
    n_env, _ = _noise_photons(spec.noise)
    if isinstance(spec, Beamsplitter):
        tau = spec.tau
        return BoundSet(
            channel=spec,
            n_in=n_in,
            n_env=n_env,
            noiseless=noiseless_capacity(n_in),
            max_output_entropy_term=g(tau * n_in + (1.0 - tau) * n_env),
            holevo=holevo_thermal(tau, n_in, n_env),
            min_output_entropy=min_output_entropy_thermal(tau, n_env),
            sk_upper=sk_upper(tau, n_in, n_env),
            general_upper=general_upper(tau, n_in, spec.noise),
            log_sum_upper=log_sum_upper(tau, n_in, spec.noise),
            pure_loss=pure_loss_capacity(tau, n_in),
        )
    if isinstance(spec, Amplifier):
        kappa = spec.kappa
        return BoundSet(
            channel=spec,
            n_in=n_in,
            n_env=n_env,
            noiseless=noiseless_capacity(n_in),
            max_output_entropy_term=g(kappa * n_in + (kappa - 1.0) * (n_env + 1.0)),
            amplifier_general_upper=amplifier_general_upper(kappa, n_in, spec.noise),
        )
    raise InvalidArgumentError(f"unknown channel spec {spec!r}")
