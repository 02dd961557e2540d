"""Command-line front end.

Subcommands map one-to-one onto the library modules::

    accel-sim analyze <cfg>                       derived lumped parameters
    accel-sim step    <cfg> --accel-g 1           step response + metrics
    accel-sim bode    <cfg> --fmin 10 --fmax 1e5  frequency response + peak
    accel-sim sweep   <cfg> --param gap --lo ...  one-parameter design sweep
    accel-sim check   <cfg> --rated-g 100         finger-collision check
    accel-sim report  <cfg> --targets FILE        compare against targets

Exit codes: 0 success, 1 computation failure (including a failed check or a
report with failing rows), 2 usage or configuration error.  ``--out`` writes
full-precision CSV; stdout narration rounds for reading and is silenced by
``--quiet``.  The environment variable ``ACCEL_SIM_G`` overrides the
configured g conversion value.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .config import Config, ConfigError, load_config
from .device import derive_all
from .dynamics import SecondOrderModel, integrate, make_waveform, step_metrics
from .freqresp import FlatResponseError, bode, resonance_metrics
from .output import (
    EXTERNAL_FEM_NOTE,
    derived_table,
    frequency_table,
    reference_report,
    report_table,
    sweep_table,
    trajectory_table,
    write_csv,
)
from .sweep import SweepSpec, constraint_check, sweep_parameter

ENV_G = "ACCEL_SIM_G"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="accel-sim",
        description="Analytic modeling and simulation of comb-drive capacitive accelerometers.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("config", help="device configuration file")
    common.add_argument("--quiet", action="store_true", help="suppress stdout narration")
    common.add_argument("--out", metavar="FILE", help="write results as CSV")

    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("analyze", parents=[common], help="derive the lumped device parameters")

    p_step = sub.add_parser("step", parents=[common], help="simulate a step of acceleration")
    p_step.add_argument("--accel-g", type=float, default=1.0, help="step amplitude in g")
    p_step.add_argument("--zeta", type=float, help="override the damping ratio")
    p_step.add_argument("--dt", type=float, help="integrator step in s")
    p_step.add_argument("--duration", type=float, help="simulated span in s")

    p_bode = sub.add_parser("bode", parents=[common], help="sample the frequency response")
    p_bode.add_argument("--fmin", type=float, help="lowest frequency in Hz")
    p_bode.add_argument("--fmax", type=float, help="highest frequency in Hz")
    p_bode.add_argument("--points", type=int, help="number of grid points")

    p_sweep = sub.add_parser("sweep", parents=[common], help="sweep one design parameter")
    p_sweep.add_argument("--param", required=True, help="parameter name")
    p_sweep.add_argument("--lo", type=float, required=True, help="lower bound (SI, or g)")
    p_sweep.add_argument("--hi", type=float, required=True, help="upper bound (SI, or g)")
    p_sweep.add_argument("--points", type=int, default=50, help="number of sweep points")

    p_check = sub.add_parser("check", parents=[common], help="check the collision constraint")
    p_check.add_argument("--rated-g", type=float, required=True, help="rated acceleration in g")
    p_check.add_argument(
        "--safety", type=float, default=1.0, help="usable fraction of the gap, in (0, 1]"
    )

    p_report = sub.add_parser("report", parents=[common], help="compare against reference targets")
    p_report.add_argument("--targets", required=True, help="targets file (quantity, value, tol)")

    return parser


def _say(args, text: str) -> None:
    if not args.quiet:
        print(text)


def _cmd_analyze(args, config: Config) -> int:
    derived = derive_all(config.geometry, config.material, config.overrides)
    rows = [
        ("mass", derived.mass, "kg", "mass" in derived.overridden),
        ("stiffness", derived.stiffness, "N/m", "stiffness" in derived.overridden),
        ("static capacitance", derived.static_capacitance, "F", False),
        ("damping coefficient", derived.damping_coefficient, "N*s/m", False),
        ("natural frequency", derived.f_n, "Hz", False),
        ("angular frequency", derived.omega_n, "rad/s", False),
        ("damping ratio", derived.zeta, "", False),
        ("sensitivity", derived.sensitivity, "m/(m/s^2)", "sensitivity" in derived.overridden),
    ]
    for name, value, unit, overridden in rows:
        tag = "   [override]" if overridden else ""
        _say(args, f"{name:<20} {value:.6g} {unit}{tag}")
    if args.out:
        write_csv(args.out, *derived_table(config))
        _say(args, f"wrote {args.out}")
    return 0


def _cmd_step(args, config: Config) -> int:
    derived = derive_all(config.geometry, config.material, config.overrides)
    model = SecondOrderModel.from_derived(derived)
    if args.zeta is not None:
        model = replace(model, zeta=args.zeta)
    amplitude = args.accel_g * config.g_value
    dt = args.dt if args.dt is not None else config.dt
    duration = args.duration if args.duration is not None else config.duration

    trajectory = integrate(model, make_waveform("step", amplitude=amplitude), dt, duration)
    metrics = step_metrics(
        trajectory, final_value=amplitude * model.dc_gain, settling_band=config.settling_band
    )
    _say(args, f"step of {args.accel_g:g} g ({amplitude:.6g} m/s^2), dt = {dt:g} s")
    _say(args, f"final value      {metrics.final_value:.6g} m")
    _say(args, f"rise time        {metrics.rise_time * 1e6:.4g} us")
    _say(args, f"settling time    {metrics.settling_time * 1e3:.4g} ms "
               f"({config.settling_band:.0%} band)")
    _say(args, f"overshoot        {metrics.overshoot_pct:.4g} %")
    _say(args, f"peak time        {metrics.peak_time * 1e6:.4g} us")
    if args.out:
        write_csv(args.out, *trajectory_table(trajectory))
        _say(args, f"wrote {args.out}")
    return 0


def _cmd_bode(args, config: Config) -> int:
    derived = derive_all(config.geometry, config.material, config.overrides)
    model = SecondOrderModel.from_derived(derived)
    f_min = args.fmin if args.fmin is not None else config.f_min
    f_max = args.fmax if args.fmax is not None else config.f_max
    n_points = args.points if args.points is not None else config.n_points

    resp = bode(model, f_min, f_max, n_points, config.spacing)
    _say(args, f"{n_points} points, {f_min:g} Hz .. {f_max:g} Hz ({config.spacing})")
    _say(args, f"DC magnitude     {model.dc_gain:.6g} m/(m/s^2)")
    if n_points < 3:
        _say(args, "grid too small for peak metrics")
    else:
        try:
            metrics = resonance_metrics(resp)
            _say(args, f"peak frequency   {metrics.peak_frequency:.6g} Hz")
            _say(args, f"peak magnitude   {metrics.peak_magnitude:.6g} m/(m/s^2)")
            _say(args, f"quality factor   {metrics.quality_factor:.6g}")
        except FlatResponseError:
            _say(args, "no resonant peak in this grid (response only rolls off)")
    if args.out:
        write_csv(args.out, *frequency_table(resp))
        _say(args, f"wrote {args.out}")
    return 0


def _cmd_sweep(args, config: Config) -> int:
    spec = SweepSpec(param=args.param, lo=args.lo, hi=args.hi, n_points=args.points)
    result = sweep_parameter(config, spec)
    flagged = [row for row in result.rows if row.collision]
    _say(args, f"swept {spec.param} over [{spec.lo:g}, {spec.hi:g}] in {spec.n_points} points")
    if flagged:
        first = flagged[0]
        _say(args, f"collision flagged at {spec.param} = {first.param_value:g} "
                   f"(deflection {first.displacement:.6g} m vs gap)")
    else:
        _say(args, "no collision anywhere in the range")
    if args.out:
        write_csv(args.out, *sweep_table(result))
        _say(args, f"wrote {args.out}")
    return 0


def _cmd_check(args, config: Config) -> int:
    report = constraint_check(config, args.rated_g, args.safety)
    verdict = "PASS" if report.passed else "FAIL"
    _say(args, f"rated load       {report.rated_g:g} g (g = {config.g_value:g} m/s^2)")
    _say(args, f"deflection       {report.displacement:.6g} m of {report.gap:.6g} m gap "
               f"(safety factor {report.safety_factor:g})")
    _say(args, f"margin           {report.margin:.6g} m")
    _say(args, f"max safe load    {report.max_safe_g:.6g} g")
    _say(args, f"{verdict}: device {'survives' if report.passed else 'cannot carry'} "
               f"{report.rated_g:g} g")
    return 0 if report.passed else 1


def _cmd_report(args, config: Config) -> int:
    rows = reference_report(config, args.targets)
    width = max((len(row.quantity) for row in rows), default=8)
    for row in rows:
        status = "ok  " if row.passed else "FAIL"
        note = f"   ({row.note})" if row.note else ""
        _say(args, f"{status} {row.quantity:<{width}} computed {row.computed:.8g} "
                   f"vs {row.target:.8g} (rel err {row.rel_error:.2e}, tol {row.tolerance:.0e})"
                   f"{note}")
    failed = [row for row in rows if not row.passed]
    _say(args, f"{len(rows) - len(failed)}/{len(rows)} targets matched")
    _say(args, EXTERNAL_FEM_NOTE)
    if args.out:
        write_csv(args.out, *report_table(rows))
        _say(args, f"wrote {args.out}")
    return 1 if failed else 0


_HANDLERS = {
    "analyze": _cmd_analyze,
    "step": _cmd_step,
    "bode": _cmd_bode,
    "sweep": _cmd_sweep,
    "check": _cmd_check,
    "report": _cmd_report,
}


def run_command(argv=None) -> int:
    """Parse argv, run one subcommand and return the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors itself
        return exc.code if isinstance(exc.code, int) else 2

    try:
        config = load_config(args.config)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    env_g = os.environ.get(ENV_G)
    if env_g is not None:
        try:
            config = replace(config, g_value=float(env_g))
        except ValueError as exc:
            print(f"error: bad {ENV_G} value {env_g!r}: {exc}", file=sys.stderr)
            return 2

    try:
        return _HANDLERS[args.command](args, config)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command())
