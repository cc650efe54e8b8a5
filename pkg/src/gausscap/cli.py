"""Command-line front end: ``gausscap {eval,sweep,verify,cov}``.

Channel and sweep parameters can come from a flat ``key = value`` config
file (``--config``); explicit flags win over the file.

Exit status: 0 on success, 1 on argument or domain errors, 2 when a proven
entropy power inequality is violated during ``verify``.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from . import qepi
from .bounds import BoundSet, evaluate_bound_set
from .channels import Amplifier, Beamsplitter, ChannelSpec
from .symplectic import (
    AsymmetricCovarianceError,
    EulerDecomposition,
    GaussianStateError,
    NoiseSpec,
    NotPositiveDefiniteError,
    SubHeisenbergError,
    compose_euler,
    gaussian_entropy,
    general_noise_cov,
    mean_photon_number,
    symplectic_eigenvalue,
    symplectic_residual,
    thermal_cov,
    validate_cov,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2

SWEEP_VARIABLES = ("input_photons", "tau", "kappa", "squeezing_r", "env_photons")
BEAMSPLITTER_COLUMNS = ("holevo", "sk_upper", "general_upper", "log_sum_upper")
SYMPLECTIC_TOL = 1e-13


class CLIError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


# dest -> converter for every option that may also appear in a config file
CHANNEL_KEYS: dict[str, Callable[[str], object]] = {
    "channel": str,
    "tau": float,
    "kappa": float,
    "n_in": float,
    "n_th": float,
    "n_env": float,
    "r": float,
    "theta": float,
    "units": str,
}
SWEEP_KEYS: dict[str, Callable[[str], object]] = {
    **CHANNEL_KEYS,
    "variable": str,
    "start": float,
    "stop": float,
    "steps": int,
    "output": str,
}
FALLBACKS = {
    "channel": "beamsplitter",
    "tau": 0.5,
    "kappa": 2.0,
    "n_in": 1.0,
    "r": 0.0,
    "theta": 0.0,
    "units": "nats",
}


def read_config(path: str) -> dict[str, str]:
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CLIError(f"cannot read config {path}: {exc.strerror}")
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CLIError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _merge_config(args: argparse.Namespace, keys: dict[str, Callable[[str], object]]) -> None:
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    for key, raw in cfg.items():
        if key not in keys:
            raise CLIError(f"unknown config key {key!r}")
        if getattr(args, key, None) is None:
            try:
                setattr(args, key, keys[key](raw))
            except ValueError:
                raise CLIError(f"bad value for {key}: {raw!r}")
    for key, value in FALLBACKS.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)
    if args.n_th is not None and args.n_env is not None:
        raise CLIError("give either n_th or n_env, not both")
    if args.n_th is None and args.n_env is None:
        args.n_th = 0.0
    if args.units not in ("nats", "bits"):
        raise CLIError(f"units must be 'nats' or 'bits', got {args.units!r}")
    if args.channel not in ("beamsplitter", "amplifier"):
        raise CLIError(f"channel must be 'beamsplitter' or 'amplifier', got {args.channel!r}")


def _noise(n_th: Optional[float], n_env: Optional[float], r: float, theta: float) -> NoiseSpec:
    if n_env is not None:
        return NoiseSpec.from_mean_photons(n_env, r, theta)
    return NoiseSpec(n_th, r, theta)


def _channel(channel: str, tau: float, kappa: float, noise: NoiseSpec) -> ChannelSpec:
    if channel == "amplifier":
        return Amplifier(kappa, noise)
    return Beamsplitter(tau, noise)


def _scale(units: str) -> float:
    return 1.0 / math.log(2.0) if units == "bits" else 1.0


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else format(float(value), ".17g")


# -- eval ------------------------------------------------------------------

def cmd_eval(args) -> int:
    _merge_config(args, CHANNEL_KEYS)
    noise = _noise(args.n_th, args.n_env, args.r, args.theta)
    spec = _channel(args.channel, args.tau, args.kappa, noise)
    bs = evaluate_bound_set(spec, args.n_in)
    print(format_bound_set(bs, args.units))
    return EXIT_OK


def format_bound_set(bs: BoundSet, units: str = "nats") -> str:
    spec = bs.channel
    scale = _scale(units)
    if isinstance(spec, Beamsplitter):
        head = [("channel", "beamsplitter"), ("tau", _fmt(spec.tau))]
    else:
        head = [("channel", "amplifier"), ("kappa", _fmt(spec.kappa))]
    head += [
        ("n_in", _fmt(bs.n_in)),
        ("noise_n_th", _fmt(spec.noise.n_th)),
        ("noise_n_env", _fmt(bs.n_env)),
        ("noise_r", _fmt(spec.noise.r)),
        ("noise_theta", _fmt(spec.noise.theta)),
        ("units", units),
    ]
    rows = head + [(k, _fmt(v * scale)) for k, v in bs.values().items() if v is not None]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


# -- sweep -----------------------------------------------------------------

def sweep_csv(args) -> str:
    """Evaluate the requested sweep and return the CSV text."""
    if args.variable not in SWEEP_VARIABLES:
        raise CLIError(f"variable must be one of {', '.join(SWEEP_VARIABLES)}")
    if args.steps is None or args.start is None or args.stop is None:
        raise CLIError("sweep needs start, stop and steps")
    if args.steps < 2:
        raise CLIError("steps must be >= 2")
    if not args.start < args.stop:
        raise CLIError("start must be < stop")
    if args.variable == "tau" and args.channel != "beamsplitter":
        raise CLIError("tau sweeps need the beamsplitter channel")
    if args.variable == "kappa" and args.channel != "amplifier":
        raise CLIError("kappa sweeps need the amplifier channel")

    amplifier = args.channel == "amplifier"
    columns = BEAMSPLITTER_COLUMNS + (("amplifier_general_upper",) if amplifier else ())
    scale = _scale(args.units)
    lines = [f"# units={args.units}", ",".join((args.variable,) + columns)]
    for x in np.linspace(args.start, args.stop, args.steps):
        x = float(x)
        p = {"tau": args.tau, "kappa": args.kappa, "n_in": args.n_in,
             "n_th": args.n_th, "n_env": args.n_env, "r": args.r}
        if args.variable == "input_photons":
            p["n_in"] = x
        elif args.variable == "env_photons":
            p["n_env" if args.n_env is not None else "n_th"] = x
        elif args.variable == "squeezing_r":
            p["r"] = x
        else:
            p[args.variable] = x
        try:
            noise = _noise(p["n_th"], p["n_env"], p["r"], args.theta)
            bs = evaluate_bound_set(_channel(args.channel, p["tau"], p["kappa"], noise), p["n_in"])
        except GaussianStateError as exc:
            raise CLIError(f"domain error at {args.variable}={x!r}: {exc}")
        values = [getattr(bs, c) for c in columns]
        lines.append(",".join([_fmt(x)] + [_fmt(None if v is None else v * scale) for v in values]))
    return "\n".join(lines) + "\n"


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CLIError(f"cannot write {path}: {exc.strerror}")


def cmd_sweep(args) -> int:
    _merge_config(args, SWEEP_KEYS)
    if args.output is None:
        raise CLIError("sweep needs an output path (--output)")
    text = sweep_csv(args)
    _write(args.output, text)
    print(f"wrote {text.count(chr(10)) - 2} rows to {args.output}")
    return EXIT_OK


# -- verify ----------------------------------------------------------------

def cmd_verify(args) -> int:
    taus = args.taus or list(qepi.DEFAULT_TAUS)
    kappas = args.kappas or list(qepi.DEFAULT_KAPPAS)
    photons = args.photons or list(qepi.DEFAULT_PHOTONS)
    squeezing = args.squeezing or list(qepi.DEFAULT_SQUEEZING)
    thetas = args.thetas or list(qepi.DEFAULT_THETAS)
    try:
        if args.equal_thermal:
            bs_grids = qepi.equal_thermal_grid(taus, photons)
            amp_grids = qepi.equal_thermal_grid(kappas, photons)
        else:
            bs_grids = [qepi.default_grid(taus, photons, squeezing, thetas)]
            amp_grids = [qepi.default_grid(kappas, photons, squeezing, thetas)]
        reports = [
            _merge_reports([qepi.check_beamsplitter_qepi(gr) for gr in bs_grids]),
            _merge_reports([qepi.check_amplifier_qepi(gr) for gr in amp_grids]),
            _merge_reports([qepi.check_entropic_form(gr) for gr in bs_grids]),
        ]
    except GaussianStateError as exc:
        raise CLIError(str(exc))

    text = qepi.CSV_HEADER + "\n" + "".join(r.to_csv(header=False) for r in reports)
    _write(args.output, text)

    status = EXIT_OK
    for report in reports:
        if report.violated and report.proven:
            verdict = "VIOLATION"
            status = EXIT_VIOLATION
        elif report.violated:
            verdict = qepi.FLAG_FINDING
        else:
            verdict = "ok"
        kind = "ent" if report.inequality == qepi.ENTROPIC else "exp"
        print(f"{report.inequality}: min {kind} slack = {_fmt(report.min_slack)} "
              f"over {len(report.rows)} points [{verdict}]")
    print(f"report written to {args.output}")
    return status


def _merge_reports(reports: list[qepi.QepiReport]) -> qepi.QepiReport:
    first = reports[0]
    rows = tuple(row for r in reports for row in r.rows)
    return qepi.QepiReport(first.inequality, rows, first.proven, first.note)


# -- cov -------------------------------------------------------------------

_ERROR_KINDS = {
    AsymmetricCovarianceError: "asymmetric",
    NotPositiveDefiniteError: "not positive definite",
    SubHeisenbergError: "sub-Heisenberg",
}


def _describe(v) -> str:
    nu = symplectic_eigenvalue(v)
    rows = [
        ("V", f"[[{_fmt(v.a)}, {_fmt(v.b)}], [{_fmt(v.b)}, {_fmt(v.d)}]]"),
        ("det", _fmt(v.det)),
        ("nu", _fmt(nu)),
        ("n_th", _fmt(0.5 * (nu - 1.0))),
        ("n_env", _fmt(mean_photon_number(v))),
        ("entropy_nats", _fmt(gaussian_entropy(v))),
    ]
    return "\n".join(f"{k:<12}  {val}" for k, val in rows)


def cmd_cov(args) -> int:
    if args.cov_command == "build":
        noise = _noise(args.n_th if args.n_env is None else None, args.n_env, args.r, args.theta)
        print(_describe(general_noise_cov(noise)))
    elif args.cov_command == "validate":
        a, b, c, d = args.entries
        try:
            v = validate_cov([[a, b], [c, d]])
        except GaussianStateError as exc:
            kind = next((k for cls, k in _ERROR_KINDS.items() if isinstance(exc, cls)), "invalid")
            raise CLIError(f"{kind}: {exc}")
        print("valid: yes")
        print(_describe(v))
    else:
        if args.random:
            rng = np.random.default_rng(args.seed)
            triples = [(rng.uniform(0, 2 * math.pi), rng.uniform(-2, 2), rng.uniform(0, 2 * math.pi))
                       for _ in range(args.count)]
        else:
            triples = [(args.theta, args.r, args.phi)]
        ok = True
        for theta, r, phi in triples:
            m = compose_euler(EulerDecomposition(theta, r, phi))
            res = symplectic_residual(m)
            det_th = thermal_cov(1.0).conjugate(m).det
            good = res < SYMPLECTIC_TOL
            ok &= good
            print(f"theta={_fmt(theta)} r={_fmt(r)} phi={_fmt(phi)} det={_fmt(np.linalg.det(m))} "
                  f"conjugated_thermal1_det={_fmt(det_th)}")
            if good:
                print("symplectic: yes (residual < 1e-13)")
            else:
                print(f"symplectic: no (residual = {_fmt(res)})")
        if not ok:
            return EXIT_ERROR
    return EXIT_OK


# -- parser ----------------------------------------------------------------

def _add_channel_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat 'key = value' file; flags override it")
    p.add_argument("--channel", choices=("beamsplitter", "amplifier"))
    p.add_argument("--tau", type=float, help="beamsplitter transmissivity in [0, 1]")
    p.add_argument("--kappa", type=float, help="amplifier gain (> 1)")
    p.add_argument("--n-in", type=float, help="input mean photon number")
    noise = p.add_mutually_exclusive_group()
    noise.add_argument("--n-th", type=float, help="environment thermal photons before squeezing")
    noise.add_argument("--n-env", type=float, help="environment mean photon number (n_th back-solved)")
    p.add_argument("--r", type=float, help="environment squeezing parameter")
    p.add_argument("--theta", type=float, help="environment squeezing angle (rad)")
    p.add_argument("--units", choices=("nats", "bits"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gausscap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate every bound at one channel point")
    _add_channel_args(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="sweep one parameter and write a CSV")
    _add_channel_args(p)
    p.add_argument("--variable", choices=SWEEP_VARIABLES)
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the entropy power inequality grid checks")
    p.add_argument("--taus", type=_float_list)
    p.add_argument("--kappas", type=_float_list)
    p.add_argument("--photons", type=_float_list)
    p.add_argument("--squeezing", type=_float_list)
    p.add_argument("--thetas", type=_float_list)
    p.add_argument("--equal-thermal", action="store_true",
                   help="restrict to equal thermal input pairs")
    p.add_argument("--output", "-o", default="qepi_report.csv")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cov", help="covariance matrix utilities")
    p.set_defaults(func=cmd_cov)
    cov = p.add_subparsers(dest="cov_command", required=True, parser_class=_Parser)
    b = cov.add_parser("build", help="build V_G from (n_th | n_env, r, theta)")
    g = b.add_mutually_exclusive_group()
    g.add_argument("--n-th", type=float, default=0.0)
    g.add_argument("--n-env", type=float)
    b.add_argument("--r", type=float, default=0.0)
    b.add_argument("--theta", type=float, default=0.0)
    v = cov.add_parser("validate", help="validate a raw matrix given as a b c d")
    v.add_argument("entries", type=float, nargs=4, metavar="X")
    d = cov.add_parser("decompose-check", help="check O(theta) T(r) O(phi) is symplectic")
    d.add_argument("--theta", type=float, default=0.0)
    d.add_argument("--r", type=float, default=0.0)
    d.add_argument("--phi", type=float, default=0.0)
    d.add_argument("--random", action="store_true", help="draw random triples instead")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--count", type=int, default=1)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CLIError, GaussianStateError) as exc:
        print(f"gausscap: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
