"""Design-space exploration: parameter sweeps, range checks, inverse design.

Every sweep point re-derives the full lumped model from scratch, so a row in
the output is exactly what :func:`accelsim.device.derive_all` would report
for that candidate device.  Overrides that pin a quantity the sweep is
deliberately varying are dropped for that sweep (keeping a stiffness
override while sweeping beam width would make the sweep a no-op).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .config import Config
from .device import (
    DerivedParams,
    DeviceGeometry,
    derive_all,
    max_safe_acceleration,
    spring_constant,
    total_mass,
)

# geometry field a sweep parameter maps to, or None for non-geometric ones
_PARAM_FIELDS = {
    "acceleration_g": None,
    "beam_length": "beam_length",
    "beam_width": "beam_width",
    "finger_count": "n_movable_fingers",
    "finger_length": "finger_length",
    "proof_mass_length": "proof_mass_length",
    "gap": "finger_gap",
}
SWEEPABLE_PARAMS = tuple(_PARAM_FIELDS)

# overrides that would mask the effect of sweeping a given parameter
_MASKED_OVERRIDES = {
    "acceleration_g": (),
    "beam_length": ("stiffness", "sensitivity"),
    "beam_width": ("stiffness", "sensitivity"),
    "finger_count": ("mass", "sensitivity"),
    "finger_length": ("mass", "sensitivity"),
    "proof_mass_length": ("mass", "sensitivity"),
    "gap": (),
}


class SweepPointError(ValueError):
    """A sweep point produced an invalid device; names the offending value."""


class BracketError(ValueError):
    """Inverse design target is not reachable inside the given bounds."""


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter sweep over a closed interval."""

    param: str
    lo: float
    hi: float
    n_points: int

    def __post_init__(self) -> None:
        if self.param not in _PARAM_FIELDS:
            raise ValueError(
                f"unknown sweep parameter {self.param!r}; expected one of "
                f"{', '.join(SWEEPABLE_PARAMS)}"
            )
        if not self.lo < self.hi:
            raise ValueError(f"sweep needs lo < hi, got {self.lo!r} .. {self.hi!r}")
        if self.n_points < 2:
            raise ValueError(f"n_points must be >= 2, got {self.n_points!r}")


@dataclass(frozen=True)
class SweepRow:
    param_value: float
    derived: DerivedParams
    displacement: float  # m, static deflection at the probe acceleration
    collision: bool  # deflection reaches or exceeds the rest gap


@dataclass(frozen=True)
class SweepResult:
    param: str
    probe_acceleration: float  # m/s^2 used for the displacement column
    rows: tuple[SweepRow, ...]


@dataclass(frozen=True)
class ConstraintReport:
    """Outcome of checking one rated acceleration against finger contact."""

    rated_g: float
    displacement: float  # m, at the rated acceleration
    gap: float  # m
    safety_factor: float
    passed: bool
    margin: float  # m, allowed deflection minus actual (negative = contact)
    max_safe_g: float  # rating at which deflection reaches the allowance


@dataclass(frozen=True)
class InverseDesignResult:
    param: str
    value: float  # m
    geometry: DeviceGeometry  # with the solved value substituted
    achieved_f_n: float  # Hz
    iterations: int


def sweep_acceleration(config: Config, lo: float, hi: float, n_points: int) -> SweepResult:
    """Static deflection versus applied acceleration in g.

    The device is derived once; each row scales the sensitivity by the
    acceleration (converted through ``config.g_value``) and flags collision
    when the deflection reaches the rest gap.
    """
    spec = SweepSpec(param="acceleration_g", lo=lo, hi=hi, n_points=n_points)
    derived = derive_all(config.geometry, config.material, config.overrides)
    gap = config.geometry.finger_gap
    rows = []
    for g in np.linspace(spec.lo, spec.hi, spec.n_points):
        accel = float(g) * config.g_value
        x = derived.sensitivity * accel
        rows.append(
            SweepRow(
                param_value=float(g),
                derived=derived,
                displacement=x,
                collision=x >= gap,
            )
        )
    return SweepResult(param=spec.param, probe_acceleration=config.g_value, rows=tuple(rows))


def sweep_parameter(config: Config, spec: SweepSpec) -> SweepResult:
    """Re-derive the device across a geometric parameter range.

    The displacement column is the static deflection at 1 g (so gap sweeps
    show directly when a nominal load becomes unsafe).  Overrides masked by
    the swept parameter are dropped; see :data:`_MASKED_OVERRIDES`.

    Raises
    ------
    SweepPointError
        If some point violates a geometric invariant (for example a sweep
        that drives a length negative); the message names the point.
    """
    if spec.param == "acceleration_g":
        return sweep_acceleration(config, spec.lo, spec.hi, spec.n_points)

    field = _PARAM_FIELDS[spec.param]
    overrides = config.overrides
    masked = [
        name for name in _MASKED_OVERRIDES[spec.param] if getattr(overrides, name) is not None
    ]
    if masked:
        overrides = replace(overrides, **{name: None for name in masked})

    base = config.geometry
    # A full-overlap device should stay full-overlap while finger_length is
    # swept; an explicitly shorter overlap is preserved and may legitimately
    # fail the overlap <= length invariant at some points.
    retie_overlap = spec.param == "finger_length" and base.initial_overlap == base.finger_length

    values = np.linspace(spec.lo, spec.hi, spec.n_points)
    rows = []
    for i, value in enumerate(values):
        point = float(value)
        if spec.param == "finger_count":
            point = round(point)
        try:
            changes: dict = {field: int(point) if spec.param == "finger_count" else point}
            if retie_overlap:
                changes["initial_overlap"] = point
            geometry = replace(base, **changes)
        except ValueError as exc:
            raise SweepPointError(
                f"sweep point {i} ({spec.param} = {point!r}): {exc}"
            ) from exc
        derived = derive_all(geometry, config.material, overrides)
        gap = geometry.finger_gap
        x = derived.sensitivity * config.g_value
        rows.append(
            SweepRow(
                param_value=float(point),
                derived=derived,
                displacement=x,
                collision=x >= gap,
            )
        )
    return SweepResult(param=spec.param, probe_acceleration=config.g_value, rows=tuple(rows))


def constraint_check(
    config: Config, rated_g: float, safety_factor: float = 1.0
) -> ConstraintReport:
    """Check that a rated acceleration cannot close the finger gap.

    Passes when the static deflection at ``rated_g`` stays strictly below
    ``safety_factor * gap``.
    """
    if rated_g < 0:
        raise ValueError(f"rated_g must be >= 0, got {rated_g!r}")
    if not 0.0 < safety_factor <= 1.0:
        raise ValueError(f"safety_factor must be in (0, 1], got {safety_factor!r}")
    derived = derive_all(config.geometry, config.material, config.overrides)
    gap = config.geometry.finger_gap
    x = derived.sensitivity * rated_g * config.g_value
    allowance = safety_factor * gap
    a_max = max_safe_acceleration(derived.sensitivity, gap, safety_factor)
    return ConstraintReport(
        rated_g=rated_g,
        displacement=x,
        gap=gap,
        safety_factor=safety_factor,
        passed=x < allowance,
        margin=allowance - x,
        max_safe_g=a_max / config.g_value,
    )


def solve_for_target_frequency(
    config: Config,
    target_f_n: float,
    free_param: str,
    lo: float,
    hi: float,
    rel_tol: float = 1e-9,
    max_iter: int = 200,
) -> InverseDesignResult:
    """Find the beam dimension that hits a target natural frequency.

    Bisects ``free_param`` (one of ``beam_length`` or ``beam_width``) over
    ``[lo, hi]`` until the derived f_n is within ``rel_tol`` of the target.
    The moving mass is held fixed (a mass override is honored); stiffness
    and sensitivity overrides are ignored since they would make f_n
    insensitive to the free parameter.

    Raises
    ------
    BracketError
        If the target frequency is outside what [lo, hi] can produce.
    """
    if free_param not in ("beam_length", "beam_width"):
        raise ValueError(
            f"free_param must be 'beam_length' or 'beam_width', got {free_param!r}"
        )
    if not target_f_n > 0:
        raise ValueError(f"target_f_n must be > 0, got {target_f_n!r}")
    if not 0.0 < lo < hi:
        raise ValueError(f"need 0 < lo < hi, got {lo!r} .. {hi!r}")

    mass = config.overrides.mass
    if mass is None:
        mass = total_mass(config.geometry, config.material)

    def f_n_at(value: float) -> float:
        geometry = replace(config.geometry, **{free_param: value})
        k = spring_constant(geometry, config.material)
        return math.sqrt(k / mass) / (2.0 * math.pi)

    def residual(value: float) -> float:
        return f_n_at(value) - target_f_n

    r_lo, r_hi = residual(lo), residual(hi)
    for bound, res in ((lo, r_lo), (hi, r_hi)):
        if abs(res) <= rel_tol * target_f_n:
            geometry = replace(config.geometry, **{free_param: bound})
            return InverseDesignResult(free_param, bound, geometry, f_n_at(bound), 0)
    if r_lo * r_hi > 0:
        raise BracketError(
            f"target f_n = {target_f_n!r} Hz is outside the range reachable with "
            f"{free_param} in [{lo!r}, {hi!r}] m "
            f"(f_n spans [{min(f_n_at(lo), f_n_at(hi))!r}, {max(f_n_at(lo), f_n_at(hi))!r}] Hz)"
        )

    a, b, r_a = lo, hi, r_lo
    for iteration in range(1, max_iter + 1):
        mid = 0.5 * (a + b)
        r_mid = residual(mid)
        if abs(r_mid) <= rel_tol * target_f_n:
            geometry = replace(config.geometry, **{free_param: mid})
            return InverseDesignResult(free_param, mid, geometry, f_n_at(mid), iteration)
        if r_a * r_mid < 0:
            b = mid
        else:
            a, r_a = mid, r_mid
    raise RuntimeError(
        f"bisection did not reach rel_tol = {rel_tol!r} in {max_iter} iterations"
    )
