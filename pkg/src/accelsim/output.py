"""Deterministic CSV output and comparison against published reference data.

Floats are rendered with ``%.17g`` so values survive a round trip through
text exactly; identical inputs always produce byte-identical files.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

from .config import _CAPACITANCE_UNITS, _LENGTH_UNITS, UNIT_FACTORS, Config
from .device import (
    analytic_step_metrics,
    derive_all,
    spring_constant,
    total_mass,
)
from .dynamics import SecondOrderModel, Trajectory
from .freqresp import FrequencyResponse, bode, resonance_metrics
from .sweep import SweepResult

# Values quoted from an external finite-element study of the same device.
# They are context for the analytic model, never comparison targets: the FEM
# mesh resolves compliance the lumped formulas ignore.
EXTERNAL_FEM_NOTE = (
    "external FEM references (context only, not targets): "
    "modal frequency 2.1 kHz, rest capacitance 0.964 pF, sensitivity 5e-9 m per (m/s^2)"
)


class TargetsError(ValueError):
    """Malformed targets file or a quantity this package cannot compute."""


@dataclass(frozen=True)
class ReportRow:
    quantity: str
    computed: float
    target: float
    rel_error: float
    tolerance: float
    passed: bool
    note: str = ""


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def write_csv(path, header, rows) -> None:
    """Write a table as RFC-4180 CSV with LF line endings.

    ``rows`` is any iterable of sequences; floats get 17 significant digits,
    booleans become 0/1, everything else is stringified.
    """
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format_value(value) for value in row])


def trajectory_table(trajectory: Trajectory):
    header = ["t_s", "x_m"]
    rows = zip(trajectory.times.tolist(), trajectory.positions.tolist())
    return header, rows


def frequency_table(resp: FrequencyResponse):
    header = ["f_hz", "mag_m_per_ms2", "mag_db_rel_dc", "phase_deg"]
    rows = zip(
        resp.frequency_hz.tolist(),
        resp.magnitude.tolist(),
        resp.magnitude_db_rel_dc().tolist(),
        resp.phase_deg.tolist(),
    )
    return header, rows


def sweep_table(result: SweepResult):
    header = [
        "param_name",
        "param_value",
        "m_kg",
        "k_n_per_m",
        "c0_f",
        "b_ns_per_m",
        "f_n_hz",
        "zeta",
        "s_d",
        "x_m",
        "collision_flag",
    ]
    rows = [
        (
            result.param,
            row.param_value,
            row.derived.mass,
            row.derived.stiffness,
            row.derived.static_capacitance,
            row.derived.damping_coefficient,
            row.derived.f_n,
            row.derived.zeta,
            row.derived.sensitivity,
            row.displacement,
            row.collision,
        )
        for row in result.rows
    ]
    return header, rows


def derived_table(config: Config):
    """(quantity, value, overridden) rows for the analyze output."""
    derived = derive_all(config.geometry, config.material, config.overrides)
    header = ["quantity", "value", "overridden"]
    rows = [
        ("mass_kg", derived.mass, "mass" in derived.overridden),
        ("stiffness_n_per_m", derived.stiffness, "stiffness" in derived.overridden),
        ("static_capacitance_f", derived.static_capacitance, False),
        ("damping_ns_per_m", derived.damping_coefficient, False),
        ("omega_n_rad_per_s", derived.omega_n, False),
        ("f_n_hz", derived.f_n, False),
        ("zeta", derived.zeta, False),
        ("sensitivity_m_per_ms2", derived.sensitivity, "sensitivity" in derived.overridden),
    ]
    return header, rows


def report_table(rows: list[ReportRow]):
    header = ["quantity", "computed", "target", "rel_error", "tolerance", "passed", "note"]
    out = [
        (r.quantity, r.computed, r.target, r.rel_error, r.tolerance, r.passed, r.note)
        for r in rows
    ]
    return header, out


def _report_quantities(config: Config) -> dict:
    """Lazily evaluated registry of everything a targets file may reference."""
    derived = derive_all(config.geometry, config.material, config.overrides)
    formula_k = spring_constant(config.geometry, config.material)
    formula_m = total_mass(config.geometry, config.material)

    def stiffness_note() -> str:
        if "stiffness" in derived.overridden:
            return f"override active; beam formula gives {formula_k:.6g} N/m"
        return ""

    def mass_note() -> str:
        if "mass" in derived.overridden:
            return f"override active; volume formula gives {formula_m:.6g} kg"
        return ""

    def rise_time() -> float:
        return analytic_step_metrics(derived.omega_n, derived.zeta)[0]

    def settling_time() -> float:
        return analytic_step_metrics(derived.omega_n, derived.zeta)[1]

    def peak() -> tuple[float, float]:
        model = SecondOrderModel.from_derived(derived)
        resp = bode(model, config.f_min, config.f_max, config.n_points, config.spacing)
        metrics = resonance_metrics(resp)
        return metrics.peak_frequency, metrics.quality_factor

    return {
        "mass": (lambda: derived.mass, mass_note),
        "stiffness": (lambda: derived.stiffness, stiffness_note),
        "static_capacitance": (lambda: derived.static_capacitance, lambda: ""),
        "damping_coefficient": (lambda: derived.damping_coefficient, lambda: ""),
        "omega_n": (lambda: derived.omega_n, lambda: ""),
        "f_n": (lambda: derived.f_n, lambda: ""),
        "zeta": (lambda: derived.zeta, lambda: ""),
        "sensitivity": (
            lambda: derived.sensitivity,
            lambda: "override active" if "sensitivity" in derived.overridden else "",
        ),
        "displacement_1g": (
            lambda: derived.sensitivity * config.g_value,
            lambda: f"g_value = {config.g_value:g} m/s^2",
        ),
        "rise_time_analytic": (rise_time, lambda: ""),
        "settling_time_analytic": (
            settling_time,
            lambda: "2 percent envelope estimate 4/(zeta omega_n)",
        ),
        "resonance_peak_hz": (lambda: peak()[0], lambda: ""),
        "quality_factor": (lambda: peak()[1], lambda: ""),
    }


def _parse_target_line(line: str, line_no: int) -> tuple[str, float, float]:
    parts = [part.strip() for part in line.split(",")]
    if len(parts) != 3:
        raise TargetsError(
            f"targets line {line_no}: expected 'quantity, value [unit], tolerance', got {line!r}"
        )
    quantity = parts[0]
    value_tokens = parts[1].split()
    if len(value_tokens) not in (1, 2):
        raise TargetsError(f"targets line {line_no}: bad value field {parts[1]!r}")
    try:
        value = float(value_tokens[0])
    except ValueError:
        raise TargetsError(
            f"targets line {line_no}: non-numeric value {value_tokens[0]!r}"
        ) from None
    if len(value_tokens) == 2:
        unit = value_tokens[1]
        if unit not in UNIT_FACTORS:
            raise TargetsError(f"targets line {line_no}: unknown unit {unit!r}")
        if unit not in _LENGTH_UNITS + _CAPACITANCE_UNITS:
            raise TargetsError(
                f"targets line {line_no}: unit {unit!r} not usable in targets; "
                "use a length or capacitance unit, or give the SI value"
            )
        value *= UNIT_FACTORS[unit]
    try:
        tolerance = float(parts[2])
    except ValueError:
        raise TargetsError(
            f"targets line {line_no}: non-numeric tolerance {parts[2]!r}"
        ) from None
    if not 0.0 < tolerance:
        raise TargetsError(f"targets line {line_no}: tolerance must be > 0")
    return quantity, value, tolerance


def reference_report(config: Config, targets_path) -> list[ReportRow]:
    """Compare the derived model against a file of published target values.

    The targets file holds one ``quantity, value [unit], tolerance`` line per
    check (``#`` comments and blank lines are skipped); tolerance is relative.
    Rows where an override replaces a formula value carry a note quoting the
    formula value, so a target that only passes by virtue of the override is
    visible as such.

    Raises
    ------
    TargetsError
        For syntax problems or quantities the report cannot compute.
    """
    registry = _report_quantities(config)
    rows: list[ReportRow] = []
    with open(targets_path, "r", encoding="utf-8") as handle:
        for line_no, raw_line in enumerate(handle, start=1):
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue
            quantity, target, tolerance = _parse_target_line(line, line_no)
            if quantity not in registry:
                raise TargetsError(
                    f"targets line {line_no}: unknown quantity {quantity!r}; known: "
                    f"{', '.join(sorted(registry))}"
                )
            compute, note = registry[quantity]
            computed = float(compute())
            rel_error = abs(computed - target) / abs(target) if target != 0 else math.inf
            rows.append(
                ReportRow(
                    quantity=quantity,
                    computed=computed,
                    target=target,
                    rel_error=rel_error,
                    tolerance=tolerance,
                    passed=rel_error <= tolerance,
                    note=note(),
                )
            )
    return rows
