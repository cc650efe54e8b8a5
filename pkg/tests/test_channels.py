import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gausscap.channels import (
    Amplifier,
    Beamsplitter,
    amplifier_output_cov,
    beamsplitter_output_cov,
    output_cov,
    output_mean_photon,
)
from gausscap.symplectic import (
    VACUUM,
    InvalidArgumentError,
    NoiseSpec,
    gaussian_entropy,
    general_noise_cov,
    mean_photon_number,
    thermal_cov,
    validate_cov,
)

OMEGA2 = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))
Z = np.diag([1.0, -1.0])

noise_specs = st.builds(
    NoiseSpec,
    st.floats(0, 10, allow_nan=False),
    st.floats(-2, 2, allow_nan=False),
    st.floats(0, 2 * math.pi, allow_nan=False),
)


def dilated_output(v_in, v_noise, symplectic):
    """Apply a two-mode symplectic to V_in + V_noise and trace out mode 2."""
    joint = np.zeros((4, 4))
    joint[:2, :2] = v_in.matrix
    joint[2:, 2:] = v_noise.matrix
    out = symplectic @ joint @ symplectic.T
    return out[:2, :2]


def beamsplitter_symplectic(tau):
    c, s = math.sqrt(tau), math.sqrt(1 - tau)
    return np.block([[c * np.eye(2), s * np.eye(2)], [-s * np.eye(2), c * np.eye(2)]])


def two_mode_squeezer(kappa):
    c, s = math.sqrt(kappa), math.sqrt(kappa - 1)
    return np.block([[c * np.eye(2), s * Z], [s * Z, c * np.eye(2)]])


class TestDilations:
    """The 4x4 oracles themselves must be symplectic."""

    @pytest.mark.parametrize("tau", [0.0, 0.3, 1.0])
    def test_beamsplitter_symplectic(self, tau):
        s = beamsplitter_symplectic(tau)
        np.testing.assert_allclose(s @ OMEGA2 @ s.T, OMEGA2, atol=1e-14)

    @pytest.mark.parametrize("kappa", [1.0, 1.5, 7.0])
    def test_squeezer_symplectic(self, kappa):
        s = two_mode_squeezer(kappa)
        np.testing.assert_allclose(s @ OMEGA2 @ s.T, OMEGA2, atol=1e-12)


class TestBeamsplitter:
    def test_identity_and_replacement(self):
        v_in, v_n = general_noise_cov(NoiseSpec(1, 0.4, 0.2)), thermal_cov(3)
        assert beamsplitter_output_cov(v_in, v_n, 1.0) == v_in
        assert beamsplitter_output_cov(v_in, v_n, 0.0) == v_n

    def test_thermal_mixture(self):
        out = beamsplitter_output_cov(thermal_cov(6.0), thermal_cov(4.0), 0.5)
        assert out == thermal_cov(5.0)
        assert mean_photon_number(out) == 5.0

    @pytest.mark.parametrize("tau", [-0.1, 1.1, math.nan])
    def test_tau_range(self, tau):
        with pytest.raises(InvalidArgumentError):
            beamsplitter_output_cov(VACUUM, VACUUM, tau)

    @given(noise_specs, noise_specs, st.floats(0, 1))
    def test_matches_dilation(self, n1, n2, tau):
        v1, v2 = general_noise_cov(n1), general_noise_cov(n2)
        expected = dilated_output(v1, v2, beamsplitter_symplectic(tau))
        got = beamsplitter_output_cov(v1, v2, tau).matrix
        scale = max(np.max(np.abs(v1.matrix)), np.max(np.abs(v2.matrix)))
        assert np.max(np.abs(got - expected)) < 1e-13 * scale

    @given(noise_specs, noise_specs, st.floats(0, 1))
    def test_output_valid(self, n1, n2, tau):
        out = beamsplitter_output_cov(general_noise_cov(n1), general_noise_cov(n2), tau)
        validate_cov(out.matrix)

    @given(noise_specs, st.floats(0, 50), st.floats(0, 1))
    def test_scalar_and_matrix_photon_paths_agree(self, noise, n_in, tau):
        out = output_cov(Beamsplitter(tau, noise), thermal_cov(n_in))
        expected = output_mean_photon(Beamsplitter(tau, noise), n_in)
        assert mean_photon_number(out) == pytest.approx(expected, rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize("tau", [0.1, 0.5, 0.9])
    @pytest.mark.parametrize("n_env", [0.0, 1.0, 4.0])
    def test_entropy_monotone_in_input(self, tau, n_env):
        ns = np.linspace(0, 20, 41)
        s = [gaussian_entropy(beamsplitter_output_cov(thermal_cov(n), thermal_cov(n_env), tau)) for n in ns]
        assert all(b >= a for a, b in zip(s, s[1:]))


class TestAmplifier:
    def test_vacuum_gain_two(self):
        out = amplifier_output_cov(VACUUM, VACUUM, 2.0)
        assert out == thermal_cov(1.0)
        assert mean_photon_number(out) == 1.0

    def test_near_unit_gain(self):
        v = general_noise_cov(NoiseSpec(2, 0.5, 1.0))
        out = amplifier_output_cov(v, thermal_cov(3), 1 + 1e-12)
        assert out.matrix == pytest.approx(v.matrix, abs=1e-10)

    @pytest.mark.parametrize("kappa", [1.0, 0.5, math.inf])
    def test_kappa_range(self, kappa):
        with pytest.raises(InvalidArgumentError):
            amplifier_output_cov(VACUUM, VACUUM, kappa)

    @pytest.mark.parametrize("n_in,n_env,kappa", [(0, 0, 2), (3, 1, 1.5), (10, 4, 5)])
    def test_thermal_photons(self, n_in, n_env, kappa):
        out = amplifier_output_cov(thermal_cov(n_in), thermal_cov(n_env), kappa)
        assert mean_photon_number(out) == pytest.approx(kappa * n_in + (kappa - 1) * (n_env + 1))

    @given(noise_specs, noise_specs, st.floats(1.0001, 20))
    def test_matches_dilation(self, n1, n2, kappa):
        v1, v2 = general_noise_cov(n1), general_noise_cov(n2)
        expected = dilated_output(v1, v2, two_mode_squeezer(kappa))
        got = amplifier_output_cov(v1, v2, kappa).matrix
        scale = kappa * max(np.max(np.abs(v1.matrix)), np.max(np.abs(v2.matrix)))
        assert np.max(np.abs(got - expected)) < 1e-12 * scale

    @given(noise_specs, noise_specs, st.floats(1.0001, 20))
    def test_output_valid(self, n1, n2, kappa):
        validate_cov(amplifier_output_cov(general_noise_cov(n1), general_noise_cov(n2), kappa).matrix)


class TestOutputMeanPhoton:
    def test_fig2b_point(self):
        assert output_mean_photon(Beamsplitter(0.5, NoiseSpec(4.0)), 20.0) == 12.0

    def test_identity(self):
        assert output_mean_photon(Beamsplitter(1.0, NoiseSpec(3.0, 1.0)), 7.5) == 7.5

    def test_amplifier_vacuum(self):
        assert output_mean_photon(Amplifier(2.0), 0.0) == 1.0

    def test_squeezed_noise_uses_physical_photons(self):
        noise = NoiseSpec(1.0, 1.0)
        n_env = (3 * math.cosh(2) - 1) / 2
        assert output_mean_photon(Beamsplitter(0.5, noise), 2.0) == pytest.approx(1.0 + n_env / 2)

    def test_spec_validation(self):
        with pytest.raises(InvalidArgumentError):
            Beamsplitter(1.5)
        with pytest.raises(InvalidArgumentError):
            Amplifier(1.0)
