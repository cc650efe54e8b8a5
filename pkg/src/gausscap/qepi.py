"""Grid checks of the quantum entropy power inequalities on Gaussian states.

Entropies are exact (symplectic eigenvalue), so any negative slack beyond
:data:`VIOLATION_TOL` on the proven inequalities points to a bug rather
than to roundoff.  The entropic form for the beamsplitter is checked the
same way, but its results are only grid evidence.
"""

from __future__ import annotations

import io
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .channels import _check_kappa, _check_tau, amplifier_output_cov, beamsplitter_output_cov
from .symplectic import (
    CovarianceMatrix,
    InvalidArgumentError,
    NoiseSpec,
    g,
    gaussian_entropy,
    general_noise_cov,
    symplectic_eigenvalue,
)

log = logging.getLogger(__name__)

VIOLATION_TOL = 1e-9

BEAMSPLITTER = "beamsplitter"
AMPLIFIER = "amplifier"
ENTROPIC = "entropic"

FLAG_OK = "ok"
FLAG_VIOLATION = "VIOLATION"
FLAG_FINDING = "UNPROVEN-FORM FINDING"

DEFAULT_TAUS = tuple(round(0.1 * k, 1) for k in range(1, 10))
DEFAULT_KAPPAS = (1.1, 1.5, 2.0, 5.0)
DEFAULT_PHOTONS = (0.0, 0.5, 1.0, 2.0, 4.0, 10.0)
DEFAULT_SQUEEZING = (0.0, 0.5, 1.0, 2.0)
DEFAULT_THETAS = (0.0, math.pi / 6, math.pi / 3)

CSV_HEADER = "inequality,tau_or_kappa,s1,s2,s_out,exp_slack,ent_slack,flag"


@dataclass(frozen=True)
class QepiGridSpec:
    """Mixing parameters crossed with two families of input states.

    Grid points are the row-major product ``mixing x family_1 x family_2``.
    """

    mixing: tuple[float, ...]
    family_1: tuple[NoiseSpec, ...]
    family_2: tuple[NoiseSpec, ...]
    modes: int = 1

    def __post_init__(self):
        object.__setattr__(self, "mixing", tuple(float(m) for m in self.mixing))
        object.__setattr__(self, "family_1", tuple(self.family_1))
        object.__setattr__(self, "family_2", tuple(self.family_2))
        if not (self.mixing and self.family_1 and self.family_2):
            raise InvalidArgumentError("grid lists must be non-empty")
        if self.modes != 1:
            raise InvalidArgumentError("only single-mode (D = 1) grids are supported")

    def points(self):
        return itertools.product(self.mixing, self.family_1, self.family_2)

    def __len__(self):
        return len(self.mixing) * len(self.family_1) * len(self.family_2)


def thermal_family(photons: Sequence[float] = DEFAULT_PHOTONS) -> tuple[NoiseSpec, ...]:
    return tuple(NoiseSpec(n) for n in photons)


def squeezed_family(
    photons: Sequence[float] = DEFAULT_PHOTONS,
    squeezing: Sequence[float] = DEFAULT_SQUEEZING,
    thetas: Sequence[float] = DEFAULT_THETAS,
) -> tuple[NoiseSpec, ...]:
    return tuple(NoiseSpec(n, r, t) for n, r, t in itertools.product(photons, squeezing, thetas))


def default_grid(
    mixing: Sequence[float] = DEFAULT_TAUS,
    photons: Sequence[float] = DEFAULT_PHOTONS,
    squeezing: Sequence[float] = DEFAULT_SQUEEZING,
    thetas: Sequence[float] = DEFAULT_THETAS,
) -> QepiGridSpec:
    """Thermal first inputs against squeezed-thermal second inputs."""
    return QepiGridSpec(
        tuple(mixing), thermal_family(photons), squeezed_family(photons, squeezing, thetas)
    )


def equal_thermal_grid(
    mixing: Sequence[float] = DEFAULT_TAUS, photons: Sequence[float] = DEFAULT_PHOTONS
) -> list[QepiGridSpec]:
    """One grid per photon number, each pairing a thermal state with itself."""
    return [QepiGridSpec(tuple(mixing), (NoiseSpec(n),), (NoiseSpec(n),)) for n in photons]


@dataclass(frozen=True)
class QepiRow:
    inequality: str
    mixing: float
    state_1: NoiseSpec
    state_2: NoiseSpec
    s1: float
    s2: float
    s_out: float
    exp_slack: Optional[float]
    ent_slack: Optional[float]
    flag: str

    def csv_line(self) -> str:
        cells = [self.inequality, self.mixing, self.s1, self.s2, self.s_out,
                 self.exp_slack, self.ent_slack, self.flag]
        return ",".join(_fmt(c) for c in cells)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


@dataclass(frozen=True)
class QepiReport:
    inequality: str
    rows: tuple[QepiRow, ...]
    proven: bool = True
    note: str = field(default="")

    def _min(self, attr: str) -> tuple[Optional[float], Optional[QepiRow]]:
        best = None
        for row in self.rows:
            value = getattr(row, attr)
            if value is not None and (best is None or value < getattr(best, attr)):
                best = row
        return (None, None) if best is None else (getattr(best, attr), best)

    @property
    def min_exp_slack(self) -> Optional[float]:
        return self._min("exp_slack")[0]

    @property
    def argmin_exp_slack(self) -> Optional[QepiRow]:
        return self._min("exp_slack")[1]

    @property
    def min_ent_slack(self) -> Optional[float]:
        return self._min("ent_slack")[0]

    @property
    def argmin_ent_slack(self) -> Optional[QepiRow]:
        return self._min("ent_slack")[1]

    @property
    def min_slack(self) -> Optional[float]:
        """Slack of the inequality this report checks."""
        return self.min_ent_slack if self.inequality == ENTROPIC else self.min_exp_slack

    @property
    def violated(self) -> bool:
        return any(row.flag != FLAG_OK for row in self.rows)

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        if header:
            buf.write(CSV_HEADER + "\n")
        for row in self.rows:
            buf.write(row.csv_line() + "\n")
        return buf.getvalue()


def _beamsplitter_row(tau: float, n1: NoiseSpec, n2: NoiseSpec) -> QepiRow:
    v1, v2 = general_noise_cov(n1), general_noise_cov(n2)
    s1, s2 = gaussian_entropy(v1), gaussian_entropy(v2)
    s_out = gaussian_entropy(beamsplitter_output_cov(v1, v2, tau))
    exp_slack = math.exp(s_out) - tau * math.exp(s1) - (1.0 - tau) * math.exp(s2)
    ent_slack = s_out - tau * s1 - (1.0 - tau) * s2
    flag = FLAG_OK if exp_slack >= -VIOLATION_TOL else FLAG_VIOLATION
    return QepiRow(BEAMSPLITTER, tau, n1, n2, s1, s2, s_out, exp_slack, ent_slack, flag)


def check_beamsplitter_qepi(grid: QepiGridSpec) -> QepiReport:
    """Exponential-form beamsplitter inequality at every grid point."""
    rows = tuple(_beamsplitter_row(_check_tau(t), n1, n2) for t, n1, n2 in grid.points())
    report = QepiReport(BEAMSPLITTER, rows)
    if report.violated:
        log.error("beamsplitter QEPI violated; min slack %r", report.min_exp_slack)
    return report


def check_amplifier_qepi(grid: QepiGridSpec) -> QepiReport:
    """``e^S_out >= k e^S1 + (k-1) e^S2`` with output ``k V1 + (k-1) Z V2 Z``."""
    rows = []
    for kappa, n1, n2 in grid.points():
        kappa = _check_kappa(kappa)
        v1, v2 = general_noise_cov(n1), general_noise_cov(n2)
        s1, s2 = gaussian_entropy(v1), gaussian_entropy(v2)
        s_out = gaussian_entropy(amplifier_output_cov(v1, v2, kappa))
        exp_slack = math.exp(s_out) - kappa * math.exp(s1) - (kappa - 1.0) * math.exp(s2)
        flag = FLAG_OK if exp_slack >= -VIOLATION_TOL else FLAG_VIOLATION
        rows.append(QepiRow(AMPLIFIER, kappa, n1, n2, s1, s2, s_out, exp_slack, None, flag))
    report = QepiReport(AMPLIFIER, tuple(rows))
    if report.violated:
        log.error("amplifier QEPI violated; min slack %r", report.min_exp_slack)
    return report


def check_entropic_form(grid: QepiGridSpec) -> QepiReport:
    """``S_out >= tau S1 + (1 - tau) S2``; grid evidence only, not a proof."""
    rows = []
    for tau, n1, n2 in grid.points():
        row = _beamsplitter_row(_check_tau(tau), n1, n2)
        flag = FLAG_OK if row.ent_slack >= -VIOLATION_TOL else FLAG_FINDING
        rows.append(QepiRow(ENTROPIC, row.mixing, n1, n2, row.s1, row.s2, row.s_out,
                            None, row.ent_slack, flag))
    report = QepiReport(ENTROPIC, tuple(rows), proven=False,
                        note="numerical evidence on the tested grid, not a proof")
    if report.violated:
        log.warning("entropic-form finding; min slack %r", report.min_ent_slack)
    return report


@dataclass(frozen=True)
class ChainRow:
    v_in: CovarianceMatrix
    s_out: float
    bound: float

    @property
    def slack(self) -> float:
        return self.s_out - self.bound


@dataclass(frozen=True)
class ChainReport:
    """Per-mode output entropies of a product input against the noise bound."""

    tau: float
    noise: NoiseSpec
    rows: tuple[ChainRow, ...]

    @property
    def total_output_entropy(self) -> float:
        return math.fsum(r.s_out for r in self.rows)

    @property
    def total_bound(self) -> float:
        return math.fsum(r.bound for r in self.rows)

    @property
    def total_slack(self) -> float:
        return math.fsum(r.slack for r in self.rows)

    @property
    def min_slack(self) -> float:
        return min(r.slack for r in self.rows)

    @property
    def violated(self) -> bool:
        return self.min_slack < -VIOLATION_TOL


def theorem_chain_check(
    tau: float, noise: NoiseSpec, inputs: Sequence[CovarianceMatrix]
) -> ChainReport:
    """Check ``S(out) >= (1 - tau) g((sqrt(det V_G) - 1) / 2)`` mode by mode.

    ``inputs`` lists the per-mode covariances of a product input; product
    entropies add, so the totals are plain sums over modes.
    """
    tau = _check_tau(tau)
    if not inputs:
        raise InvalidArgumentError("inputs must be non-empty")
    v_noise = general_noise_cov(noise)
    bound = (1.0 - tau) * g(0.5 * (symplectic_eigenvalue(v_noise) - 1.0))
    rows = tuple(
        ChainRow(v, gaussian_entropy(beamsplitter_output_cov(v, v_noise, tau)), bound)
        for v in inputs
    )
    report = ChainReport(tau, noise, rows)
    if report.violated:
        log.error("theorem chain violated; min slack %r", report.min_slack)
    return report
