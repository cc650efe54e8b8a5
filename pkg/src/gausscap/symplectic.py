"""Single-mode covariance-matrix algebra for zero-mean Gaussian states.

Convention: quadrature covariances are normalised so that the vacuum has
``V = I``.  A thermal state with mean photon number ``n`` therefore has
``V = (2n + 1) I`` and every physical state satisfies ``det V >= 1``.

All matrices here are 2x2 and determinants/traces use closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Absolute tolerance on symmetry and on the uncertainty relation ``det V >= 1``.
VALIDITY_TOL = 1e-12

#: Single-mode symplectic form.
OMEGA = np.array([[0.0, 1.0], [-1.0, 0.0]])


class GaussianStateError(ValueError):
    """Base class for every error raised by this package's state algebra."""


class InvalidArgumentError(GaussianStateError):
    """A parameter is non-finite or outside its domain."""


class InvalidStateError(GaussianStateError):
    """A matrix is not the covariance matrix of a physical Gaussian state."""


class AsymmetricCovarianceError(InvalidStateError):
    pass


class NotPositiveDefiniteError(InvalidStateError):
    pass


class SubHeisenbergError(InvalidStateError):
    """``det V < 1``: the uncertainty relation is violated."""


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise InvalidArgumentError(f"{name} must be finite, got {value!r}")
    return value


def _non_negative(name: str, value: float) -> float:
    value = _finite(name, value)
    if value < 0.0:
        raise InvalidArgumentError(f"{name} must be >= 0, got {value!r}")
    return value


def g(x: float) -> float:
    """Entropy in nats of a thermal state with mean photon number ``x``.

    ``g(x) = (1 + x) log(1 + x) - x log x`` with ``g(0) = 0``.
    """
    x = _non_negative("x", x)
    if x == 0.0:
        return 0.0
    if x <= 1e-300:
        # 1/x overflows; first-order expansion is exact to double precision here.
        return x * (1.0 - math.log(x))
    return x * math.log1p(1.0 / x) + math.log1p(x)


@dataclass(frozen=True)
class CovarianceMatrix:
    """Symmetric covariance matrix ``[[a, b], [b, d]]`` of a single mode.

    Construction checks positive definiteness and the uncertainty relation
    (within :data:`VALIDITY_TOL`).  Use :func:`validate_cov` to build one
    from an arbitrary 2x2 input, including a symmetry check.
    """

    a: float
    b: float
    d: float

    def __post_init__(self):
        for name in ("a", "b", "d"):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            if not math.isfinite(value):
                raise InvalidArgumentError(f"covariance entry {name} is not finite: {value!r}")
        det = self.det
        if self.a <= 0.0 or det <= 0.0:
            raise NotPositiveDefiniteError(
                f"covariance matrix is not positive definite (a={self.a!r}, det={det!r})"
            )
        if det < 1.0 - VALIDITY_TOL:
            raise SubHeisenbergError(
                f"det V = {det!r} < 1 violates the uncertainty relation"
            )

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.b

    @property
    def trace(self) -> float:
        return self.a + self.d

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.b, self.d]])

    def conjugate(self, m: np.ndarray) -> "CovarianceMatrix":
        """Return ``M V M^T`` (``M`` is expected to be symplectic)."""
        out = np.asarray(m, dtype=float) @ self.matrix @ np.asarray(m, dtype=float).T
        return CovarianceMatrix(out[0, 0], 0.5 * (out[0, 1] + out[1, 0]), out[1, 1])

    def scaled_sum(self, alpha: float, other: "CovarianceMatrix", beta: float) -> "CovarianceMatrix":
        """Return ``alpha * self + beta * other``."""
        return CovarianceMatrix(
            alpha * self.a + beta * other.a,
            alpha * self.b + beta * other.b,
            alpha * self.d + beta * other.d,
        )


VACUUM = CovarianceMatrix(1.0, 0.0, 1.0)


@dataclass(frozen=True)
class EulerDecomposition:
    """Angles and squeezing of the single-mode product ``O(theta) T(r) O(phi)``."""

    theta: float
    r: float
    phi: float


@dataclass(frozen=True)
class NoiseSpec:
    """Squeezed, rotated thermal environment.

    ``n_th`` is the thermal photon number *before* squeezing; it fixes the
    determinant ``(2 n_th + 1)^2``.  The physical mean photon number of the
    environment, :attr:`n_env`, grows with ``cosh 2r``.
    """

    n_th: float
    r: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        _non_negative("n_th", self.n_th)
        _finite("r", self.r)
        _finite("theta", self.theta)

    @classmethod
    def from_mean_photons(cls, n_env: float, r: float = 0.0, theta: float = 0.0) -> "NoiseSpec":
        """Back-solve ``n_th`` from ``2 n_env + 1 = (2 n_th + 1) cosh 2r``."""
        n_env = _non_negative("n_env", n_env)
        r = _finite("r", r)
        n_th = 0.5 * ((2.0 * n_env + 1.0) / math.cosh(2.0 * r) - 1.0)
        if n_th < -VALIDITY_TOL:
            raise InvalidArgumentError(
                f"mean photon number {n_env!r} is below the squeezed-vacuum value "
                f"{0.5 * (math.cosh(2.0 * r) - 1.0)!r} for r={r!r}"
            )
        return cls(max(n_th, 0.0), r, theta)

    @property
    def cov(self) -> CovarianceMatrix:
        return general_noise_cov(self)

    @property
    def n_env(self) -> float:
        return mean_photon_number(self.cov)


def rotation_matrix(theta: float) -> np.ndarray:
    """Phase rotation ``[[cos, sin], [-sin, cos]]``."""
    theta = _finite("theta", theta)
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]])


def squeeze_matrix(r: float) -> np.ndarray:
    """Single-mode squeezer ``diag(e^-r, e^r)``."""
    r = _finite("r", r)
    return np.diag([math.exp(-r), math.exp(r)])


def compose_euler(dec: EulerDecomposition) -> np.ndarray:
    """Symplectic matrix ``O(theta) T(r) O(phi)``."""
    return rotation_matrix(dec.theta) @ squeeze_matrix(dec.r) @ rotation_matrix(dec.phi)


def symplectic_residual(m: np.ndarray) -> float:
    """Max-norm of ``M Omega M^T - Omega``."""
    m = np.asarray(m, dtype=float)
    return float(np.max(np.abs(m @ OMEGA @ m.T - OMEGA)))


def thermal_cov(n_mean: float) -> CovarianceMatrix:
    n_mean = _non_negative("n_mean", n_mean)
    nu = 2.0 * n_mean + 1.0
    return CovarianceMatrix(nu, 0.0, nu)


def general_noise_cov(spec: NoiseSpec) -> CovarianceMatrix:
    """``(2 n_th + 1) O(theta) T(2r) O(theta)^T``.

    The outer Euler rotation ``O(phi)`` drops out against the isotropic
    thermal covariance, which is why only ``theta`` and ``r`` appear.
    """
    o = rotation_matrix(spec.theta)
    m = (2.0 * spec.n_th + 1.0) * (o @ squeeze_matrix(2.0 * spec.r) @ o.T)
    return CovarianceMatrix(m[0, 0], 0.5 * (m[0, 1] + m[1, 0]), m[1, 1])


def validate_cov(raw) -> CovarianceMatrix:
    """Check a raw 2x2 matrix and return it as a :class:`CovarianceMatrix`.

    A determinant within :data:`VALIDITY_TOL` below one is clamped to one by
    rescaling the matrix.
    """
    m = np.asarray(raw, dtype=float)
    if m.shape != (2, 2):
        raise InvalidArgumentError(f"expected a 2x2 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidArgumentError("matrix entries must be finite")
    if abs(m[0, 1] - m[1, 0]) > VALIDITY_TOL:
        raise AsymmetricCovarianceError(
            f"matrix is not symmetric: V[0,1]={float(m[0, 1])!r}, V[1,0]={float(m[1, 0])!r}"
        )
    a, b, d = float(m[0, 0]), 0.5 * float(m[0, 1] + m[1, 0]), float(m[1, 1])
    det = a * d - b * b
    if a <= 0.0 or det <= 0.0:
        raise NotPositiveDefiniteError(
            f"covariance matrix is not positive definite (a={a!r}, det={det!r})"
        )
    if det < 1.0 - VALIDITY_TOL:
        raise SubHeisenbergError(f"det V = {det!r} < 1 violates the uncertainty relation")
    if det < 1.0:
        scale = 1.0 / math.sqrt(det)
        a, b, d = a * scale, b * scale, d * scale
    return CovarianceMatrix(a, b, d)


def symplectic_eigenvalue(v: CovarianceMatrix) -> float:
    """``nu = sqrt(det V)``; clamped to 1 for determinants within tolerance."""
    det = v.det
    if det < 1.0 - VALIDITY_TOL:
        raise SubHeisenbergError(f"det V = {det!r} < 1 violates the uncertainty relation")
    return math.sqrt(max(det, 1.0))


def mean_photon_number(v: CovarianceMatrix) -> float:
    n = 0.5 * (0.5 * v.trace - 1.0)
    if n < -VALIDITY_TOL:
        raise InvalidStateError(f"negative mean photon number {n!r}")
    return max(n, 0.0)


def gaussian_entropy(v: CovarianceMatrix) -> float:
    """Von Neumann entropy in nats, ``g((nu - 1) / 2)``."""
    return g(0.5 * (symplectic_eigenvalue(v) - 1.0))
