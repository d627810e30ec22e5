"""Command-line interface: single-run PI, sweeps, table reproduction,
self-validation and measurement fitting.

Scenario parameters come from built-in defaults, overridden by an optional
flat key/value config file, overridden in turn by command-line flags.  All
CSV output is UTF-8 with a header row, ``.`` decimal separator and
scientific notation with at least six significant digits; identical inputs
produce byte-identical output.

Exit codes: 0 success, 1 validation failure, 2 configuration error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import io
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import __version__
from .constitutive import FlowParameters, RegimeAssignment, ZoneLaw, preset_name, regime_preset
from .fitting import fit_segments, model_curve, read_measurements_csv
from .kinematics import Geometry, Scenario
from .productivity import PiResult, compute_pi
from .quadrature import QuadratureError
from .reference import (
    BASE_ALPHA,
    BASE_BETA,
    BASE_H,
    BASE_LAMBDA,
    BASE_Q_OVER_H,
    BASE_R_E,
    BASE_R_W,
    BASE_V_D,
    BASE_V_F,
    REPRODUCTION_RTOL,
    compare_table,
)
from .validation import StepSizeUnderflow
from . import checks

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

_DEFAULT_REGIME = "FDpD"
_DEFAULT_S = 0.7
_DEFAULT_GAMMA = 1e-8

SWEEP_AXES = ("q_over_h", "s", "v_D", "v_F")

_SWEEP_COLUMNS = (
    "axis_name", "axis_value", "regime", "s", "v_D", "v_F",
    "q_over_h", "r_F", "r_D", "j_raw", "j_dimensionless",
)
_TABLE_COLUMNS = (
    "table", "regime", "s", "v_D", "q_over_h", "r_e",
    "published", "computed", "rel_deviation", "within_1pct",
)


class ConfigError(Exception):
    """Anything wrong with the requested configuration."""


@dataclass(frozen=True)
class SweepSpec:
    """One-axis parameter sweep: which knob, its values, which regimes."""

    axis: str
    values: tuple[float, ...]
    regimes: tuple[str, ...]

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise ValueError(f"axis must be one of {SWEEP_AXES}, got {self.axis!r}")
        if not self.values:
            raise ValueError("sweep needs at least one axis value")
        if not self.regimes:
            raise ValueError("sweep needs at least one regime preset")


def _fmt(x: float) -> str:
    return f"{x:.8e}"


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

_SCALAR_KEYS = {
    "geometry.r_e": "r_e",
    "geometry.r_w": "r_w",
    "geometry.h": "h",
    "params.alpha": "alpha",
    "params.beta": "beta",
    "params.lambda": "lambda_",
    "params.s": "s",
    "params.gamma": "gamma",
    "params.v_D": "v_D",
    "params.v_F": "v_F",
    "flow.q_over_h": "q_over_h",
}
_REGIME_KEYS = ("regime.preset", "regime.near_well", "regime.middle", "regime.near_boundary")

_ZONE_LAW_NAMES = {
    "darcy": ZoneLaw.DARCY,
    "d": ZoneLaw.DARCY,
    "forchheimer": ZoneLaw.FORCHHEIMER,
    "f": ZoneLaw.FORCHHEIMER,
    "pre-darcy": ZoneLaw.PRE_DARCY,
    "predarcy": ZoneLaw.PRE_DARCY,
    "pd": ZoneLaw.PRE_DARCY,
}


def _parse_zone_law(text: str, key: str) -> ZoneLaw:
    law = _ZONE_LAW_NAMES.get(text.strip().lower())
    if law is None:
        raise ConfigError(f"{key}: unknown zone law {text!r}")
    return law


def load_config_file(path: str) -> dict[str, str]:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from None
    out: dict[str, str] = {}
    for lineno, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {text!r}")
        key, value = (part.strip() for part in text.split("=", 1))
        if key not in _SCALAR_KEYS and key not in _REGIME_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def build_scenario(args: argparse.Namespace) -> Scenario:
    """Defaults < config file < command-line flags."""
    values = {
        "r_e": BASE_R_E, "r_w": BASE_R_W, "h": BASE_H,
        "alpha": BASE_ALPHA, "beta": BASE_BETA, "lambda_": BASE_LAMBDA,
        "s": _DEFAULT_S, "gamma": _DEFAULT_GAMMA,
        "v_D": BASE_V_D, "v_F": BASE_V_F, "q_over_h": BASE_Q_OVER_H,
    }
    regime: RegimeAssignment | None = None
    zone_laws: dict[str, ZoneLaw] = {}

    if getattr(args, "config", None):
        fields = load_config_file(args.config)
        for key, text in fields.items():
            if key in _SCALAR_KEYS:
                try:
                    values[_SCALAR_KEYS[key]] = float(text)
                except ValueError:
                    raise ConfigError(f"{key}: not a number: {text!r}") from None
            elif key == "regime.preset":
                try:
                    regime = regime_preset(text)
                except ValueError as exc:
                    raise ConfigError(str(exc)) from None
            else:
                zone_laws[key.split(".", 1)[1]] = _parse_zone_law(text, key)

    for flag, field in (
        ("r_e", "r_e"), ("r_w", "r_w"), ("h", "h"), ("alpha", "alpha"),
        ("beta", "beta"), ("lambda_", "lambda_"), ("s", "s"), ("gamma", "gamma"),
        ("v_D", "v_D"), ("v_F", "v_F"), ("q_over_h", "q_over_h"),
    ):
        override = getattr(args, flag, None)
        if override is not None:
            values[field] = override

    if getattr(args, "regime", None) is not None:
        try:
            regime = regime_preset(args.regime)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    if zone_laws:
        base = regime or regime_preset(_DEFAULT_REGIME)
        regime = RegimeAssignment(
            near_well=zone_laws.get("near_well", base.near_well),
            middle=zone_laws.get("middle", base.middle),
            near_boundary=zone_laws.get("near_boundary", base.near_boundary),
        )
    if regime is None:
        regime = regime_preset(_DEFAULT_REGIME)

    try:
        params = FlowParameters(
            alpha=values["alpha"], beta=values["beta"], lambda_=values["lambda_"],
            s=values["s"], v_D=values["v_D"], v_F=values["v_F"], gamma=values["gamma"],
        )
        if getattr(args, "continuous_predarcy", False):
            params = params.with_continuous_predarcy()
        geometry = Geometry(r_e=values["r_e"], r_w=values["r_w"], h=values["h"])
        return Scenario(
            geometry=geometry, params=params, regime=regime, q_over_h=values["q_over_h"]
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------

def _write_text(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _sweep_row(axis_name: str, axis_value: float, scn: Scenario, pi: PiResult) -> str:
    part = pi.zone_partition
    cells = (
        axis_name, _fmt(axis_value), preset_name(scn.regime),
        _fmt(scn.params.s), _fmt(scn.params.v_D), _fmt(scn.params.v_F),
        _fmt(scn.q_over_h), _fmt(part.r_F), _fmt(part.r_D),
        _fmt(pi.j_raw), _fmt(pi.j_dimensionless),
    )
    return ",".join(cells)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_pi(args: argparse.Namespace) -> int:
    scn = build_scenario(args)
    pi = compute_pi(scn, rel_tol=args.rel_tol)
    part = pi.zone_partition
    lines = []
    if args.raw:
        lines.append(f"j_raw             = {pi.j_raw:.4g} ({_fmt(pi.j_raw)}) m^3/(Pa*s)")
        lines.append(f"j_dimensionless   = {_fmt(pi.j_dimensionless)}")
    else:
        lines.append(f"j_dimensionless   = {pi.j_dimensionless:.4g} ({_fmt(pi.j_dimensionless)})")
        lines.append(f"j_raw             = {_fmt(pi.j_raw)} m^3/(Pa*s)")
    lines.append(f"regime            = {preset_name(scn.regime)}")
    lines.append(f"r_F               = {_fmt(part.r_F)} m"
                 + ("  (clamped)" if part.clamped_fast else ""))
    lines.append(f"r_D               = {_fmt(part.r_D)} m"
                 + ("  (clamped)" if part.clamped_slow else ""))
    for label, value in zip(("near_well", "middle", "near_boundary"), pi.contributions):
        lines.append(f"S_{label:<16}= {_fmt(value)}")
    print("\n".join(lines))
    if args.out:
        csv_text = ",".join(_SWEEP_COLUMNS) + "\n" + _sweep_row("q_over_h", scn.q_over_h, scn, pi) + "\n"
        _write_text(csv_text, args.out)
    return EXIT_OK


def _axis_values(args: argparse.Namespace) -> list[float]:
    if args.values is not None:
        try:
            values = [float(tok) for tok in args.values.split(",") if tok.strip()]
        except ValueError as exc:
            raise ConfigError(f"--values: {exc}") from None
    else:
        try:
            start_s, stop_s, count_s = args.log_range.split(",")
            start, stop, count = float(start_s), float(stop_s), int(count_s)
        except ValueError:
            raise ConfigError(
                f"--log-range: expected 'start,stop,points', got {args.log_range!r}"
            ) from None
        if start <= 0 or stop <= 0 or count < 1:
            raise ConfigError("--log-range: start and stop must be positive, points >= 1")
        values = [float(v) for v in np.geomspace(start, stop, count)]
    if not values:
        raise ConfigError("sweep needs at least one axis value")
    return values


def _scenario_with(scn: Scenario, axis: str, value: float) -> Scenario:
    try:
        if axis == "q_over_h":
            return replace(scn, q_over_h=value)
        return replace(scn, params=replace(scn.params, **{axis: value}))
    except ValueError as exc:
        raise ConfigError(f"axis {axis}={value:g}: {exc}") from None


def run_sweep(base: Scenario, spec: SweepSpec, rel_tol: float = 1e-10) -> str:
    """CSV text for the sweep, one row per (axis value, regime), axis-major."""
    try:
        presets = [regime_preset(name) for name in spec.regimes]
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    buf = io.StringIO()
    buf.write(",".join(_SWEEP_COLUMNS) + "\n")
    for value in spec.values:
        for preset in presets:
            scn = _scenario_with(replace(base, regime=preset), spec.axis, value)
            pi = compute_pi(scn, rel_tol=rel_tol)
            buf.write(_sweep_row(spec.axis, value, scn, pi) + "\n")
    return buf.getvalue()


def cmd_sweep(args: argparse.Namespace) -> int:
    base = build_scenario(args)
    regimes = tuple(tok.strip() for tok in args.regimes.split(",") if tok.strip())
    try:
        spec = SweepSpec(axis=args.axis, values=tuple(_axis_values(args)), regimes=regimes)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    _write_text(run_sweep(base, spec, rel_tol=args.rel_tol), args.out)
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    comparisons = compare_table(
        args.table, rel_tol=args.rel_tol, continuous_predarcy=args.continuous_predarcy
    )
    buf = io.StringIO()
    buf.write(",".join(_TABLE_COLUMNS) + "\n")
    flagged = 0
    for comp in comparisons:
        e = comp.entry
        ok = comp.within_tolerance
        flagged += 0 if ok else 1
        buf.write(",".join((
            str(e.table), e.regime, _fmt(e.s), _fmt(e.v_d), _fmt(e.q_over_h),
            _fmt(e.r_e), _fmt(e.published), _fmt(comp.computed),
            _fmt(comp.rel_deviation), "yes" if ok else "NO",
        )) + "\n")
    _write_text(buf.getvalue(), args.out)
    print(
        f"table {args.table}: {len(comparisons)} entries, {flagged} beyond "
        f"{REPRODUCTION_RTOL:.0%} relative deviation",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    fault = 1.0 + 1e-3 if args.inject_fault else 1.0
    results = checks.run_all(fault_scale=fault)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        failed += 0 if res.passed else 1
        print(f"{status} {res.name}: measured={res.measured:.6e} tolerance={res.tolerance}")
    print(f"{len(results) - failed}/{len(results)} validation properties passed")
    return EXIT_OK if failed == 0 else EXIT_VALIDATION


def cmd_fit(args: argparse.Namespace) -> int:
    try:
        data = read_measurements_csv(args.input_csv)
        fit = fit_segments(data)
    except OSError as exc:
        raise ConfigError(f"cannot read {args.input_csv!r}: {exc}") from None
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    print(f"s_hat             = {fit.s_hat:.6g}")
    print(f"lambda_hat        = {_fmt(fit.lambda_hat)}")
    print(f"alpha_hat         = {_fmt(fit.alpha_hat)}")
    print(f"v_D_hat           = {_fmt(fit.v_D_hat)}")
    print(f"sse_total         = {_fmt(fit.sse_total)}")
    print(f"points_per_segment= {fit.points_per_segment[0]},{fit.points_per_segment[1]}")
    print(f"darcy_slope       = {fit.darcy_slope:.6g}  (unconstrained diagnostic)")
    if fit.no_breakpoint:
        print("note: single Darcy segment explains the data; no breakpoint reported")
    if args.emit_model:
        v_values = np.geomspace(min(m.v for m in data), max(m.v for m in data), 200)
        buf = io.StringIO()
        buf.write("v_m_per_s,grad_p_pa_per_m\n")
        for v, grad_p in model_curve(fit, v_values):
            buf.write(f"{_fmt(v)},{_fmt(grad_p)}\n")
        _write_text(buf.getvalue(), args.emit_model)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_scenario_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", metavar="PATH", help="flat key = value config file")
    grp = sub.add_argument_group("scenario overrides")
    grp.add_argument("--r-e", dest="r_e", type=float, help="reservoir radius, m")
    grp.add_argument("--r-w", dest="r_w", type=float, help="well radius, m")
    grp.add_argument("--h", dest="h", type=float, help="reservoir thickness, m")
    grp.add_argument("--alpha", type=float, help="Darcy coefficient, Pa*s/m^2")
    grp.add_argument("--beta", type=float, help="Forchheimer coefficient, Pa*s^2/m^3")
    grp.add_argument("--lambda", dest="lambda_", type=float,
                     help="pre-Darcy coefficient, Pa*s^(1-s)/m^(2-s)")
    grp.add_argument("--s", type=float, help="pre-Darcy exponent in [0, 1]")
    grp.add_argument("--gamma", type=float, help="compressibility, 1/Pa")
    grp.add_argument("--v-d", dest="v_D", type=float, help="Darcy/pre-Darcy transition, m/s")
    grp.add_argument("--v-f", dest="v_F", type=float, help="Darcy/Forchheimer transition, m/s")
    grp.add_argument("--q-over-h", dest="q_over_h", type=float, help="specific flux Q/h, m^2/s")
    grp.add_argument("--regime", help="zone-law preset (D, F, FDD, DDpD, FDpD, FpDpD, pure-preDarcy)")
    grp.add_argument("--continuous-predarcy", action="store_true",
                     help="rescale lambda to alpha*v_D^s so the law is continuous at v_D")
    sub.add_argument("--rel-tol", dest="rel_tol", type=float, default=1e-10,
                     help="relative tolerance of the adaptive quadrature (default 1e-10)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wellpi",
        description="Pseudo-steady-state well productivity index under "
                    "composite pre-Darcy / Darcy / Forchheimer flow.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p_pi = subs.add_parser("pi", help="compute the PI for one scenario")
    _add_scenario_options(p_pi)
    p_pi.add_argument("--raw", action="store_true", help="lead with the raw SI value")
    p_pi.add_argument("--out", metavar="PATH", help="also write a one-row CSV")
    p_pi.set_defaults(func=cmd_pi)

    p_sweep = subs.add_parser("sweep", help="sweep one parameter axis, CSV output")
    _add_scenario_options(p_sweep)
    p_sweep.add_argument("--axis", required=True, choices=SWEEP_AXES)
    axis_vals = p_sweep.add_mutually_exclusive_group(required=True)
    axis_vals.add_argument("--values", help="comma-separated axis values")
    axis_vals.add_argument("--log-range", dest="log_range",
                           help="START,STOP,POINTS log-spaced axis values")
    p_sweep.add_argument("--regimes", default="D,F,FDD,DDpD,FDpD",
                         help="comma-separated regime presets (default D,F,FDD,DDpD,FDpD)")
    p_sweep.add_argument("--out", metavar="PATH", help="CSV output path (default stdout)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_table = subs.add_parser("table", help="reproduce a published reference table")
    p_table.add_argument("table", type=int, choices=(1, 2, 3, 4))
    p_table.add_argument("--continuous-predarcy", action="store_true",
                         help="rescale lambda to alpha*v_D^s before computing")
    p_table.add_argument("--rel-tol", dest="rel_tol", type=float, default=1e-10)
    p_table.add_argument("--out", metavar="PATH", help="CSV output path (default stdout)")
    p_table.set_defaults(func=cmd_table)

    p_val = subs.add_parser("validate", help="run the self-validation suite")
    p_val.add_argument("--inject-fault", dest="inject_fault", action="store_true",
                       help="self-test: perturb the Forchheimer integral by 1e-3 "
                            "so the oracle-equivalence check must fail")
    p_val.set_defaults(func=cmd_validate)

    p_fit = subs.add_parser("fit", help="fit pre-Darcy parameters from a measurement CSV")
    p_fit.add_argument("input_csv", help="CSV with columns v_m_per_s, grad_p_pa_per_m")
    p_fit.add_argument("--emit-model", dest="emit_model", metavar="PATH",
                       help="write the fitted piecewise curve over the data's velocity range")
    p_fit.set_defaults(func=cmd_fit)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (QuadratureError, StepSizeUnderflow, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
