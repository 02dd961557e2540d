"""Closed-form device physics for a comb-drive capacitive accelerometer.

The device is a proof mass suspended on four folded beams, with interdigitated
comb fingers forming a differential parallel-plate capacitor across the gaps.
Lateral acceleration deflects the mass along the sensitive axis, unbalancing
the two capacitor halves; air squeezed in the finger gaps provides damping.

Every function here is a small algebraic formula.  All inputs and outputs are
SI (m, kg, s, F, Pa) unless a name says otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

G_STANDARD = 9.80665  # m/s^2 per g
VACUUM_PERMITTIVITY = 8.854e-12  # F/m
SILICON_YOUNGS_MODULUS = 170e9  # Pa
SILICON_DENSITY = 2300.0  # kg/m^3
AIR_EFFECTIVE_VISCOSITY = 18.5e-6  # Pa*s, squeeze-film effective value


class OverlapExceededError(ValueError):
    """Requested displacement is larger than the comb finger overlap."""


class NotUnderdampedError(ValueError):
    """Transient formulas here only hold for 0 < zeta < 1."""


def _require_positive(name: str, value: float) -> None:
    if not value > 0:
        raise ValueError(f"{name} must be > 0, got {value!r}")


def _require_count(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if value < 0:
        raise ValueError(f"{name} must be >= 0, got {value!r}")


@dataclass(frozen=True)
class DeviceGeometry:
    """Plan-view dimensions of the accelerometer.

    The proof mass may be split into several identical rectangular plates
    (``n_proof_masses``); movable fingers attach to it and mesh with fixed
    fingers anchored to the substrate.  ``initial_overlap`` is the meshed
    finger length at rest and defaults to the full finger length.  Pad metal
    dimensions are bookkeeping only; they carry no mechanical or electrical
    role in the lumped model.
    """

    proof_mass_length: float  # m
    proof_mass_width: float  # m
    proof_mass_thickness: float  # m
    n_proof_masses: int
    n_movable_fingers: int
    n_fixed_fingers: int
    finger_length: float  # m
    finger_breadth: float  # m
    device_thickness: float  # m, structural layer thickness
    finger_gap: float  # m, rest gap d0 between a movable and a fixed finger
    beam_length: float  # m, one folded-beam segment
    beam_width: float  # m
    initial_overlap: float | None = None  # m, defaults to finger_length
    pad_metal_length: float | None = None  # m
    pad_metal_width: float | None = None  # m
    pad_metal_thickness: float | None = None  # m

    def __post_init__(self) -> None:
        for name in (
            "proof_mass_length",
            "proof_mass_width",
            "proof_mass_thickness",
            "finger_length",
            "finger_breadth",
            "device_thickness",
            "finger_gap",
            "beam_length",
            "beam_width",
        ):
            _require_positive(name, getattr(self, name))
        for name in ("n_proof_masses", "n_movable_fingers", "n_fixed_fingers"):
            _require_count(name, getattr(self, name))
        if self.initial_overlap is None:
            object.__setattr__(self, "initial_overlap", self.finger_length)
        _require_positive("initial_overlap", self.initial_overlap)
        if self.initial_overlap > self.finger_length:
            raise ValueError(
                "initial_overlap cannot exceed finger_length "
                f"({self.initial_overlap!r} > {self.finger_length!r})"
            )
        for name in ("pad_metal_length", "pad_metal_width", "pad_metal_thickness"):
            value = getattr(self, name)
            if value is not None:
                _require_positive(name, value)


@dataclass(frozen=True)
class MaterialProps:
    """Material and ambient constants, defaulting to silicon in air."""

    youngs_modulus: float = SILICON_YOUNGS_MODULUS  # Pa
    density: float = SILICON_DENSITY  # kg/m^3
    permittivity: float = VACUUM_PERMITTIVITY  # F/m
    effective_viscosity: float = AIR_EFFECTIVE_VISCOSITY  # Pa*s

    def __post_init__(self) -> None:
        for name in ("youngs_modulus", "density", "permittivity", "effective_viscosity"):
            _require_positive(name, getattr(self, name))


@dataclass(frozen=True)
class ModelOverrides:
    """Optional replacements for derived lumped parameters.

    An override substitutes a trusted external value (a measurement, an FEM
    result, a published figure) for the corresponding analytic formula while
    leaving every downstream quantity consistent with it.
    """

    stiffness: float | None = None  # N/m
    mass: float | None = None  # kg
    sensitivity: float | None = None  # m per (m/s^2)

    def __post_init__(self) -> None:
        for name in ("stiffness", "mass", "sensitivity"):
            value = getattr(self, name)
            if value is not None:
                _require_positive(name, value)

    def active(self) -> tuple[str, ...]:
        return tuple(
            name for name in ("mass", "stiffness", "sensitivity") if getattr(self, name) is not None
        )


@dataclass(frozen=True)
class DerivedParams:
    """Lumped model parameters produced by :func:`derive_all`."""

    mass: float  # kg
    stiffness: float  # N/m
    static_capacitance: float  # F, one half of the differential pair at rest
    damping_coefficient: float  # N*s/m
    omega_n: float  # rad/s
    f_n: float  # Hz
    zeta: float  # dimensionless
    sensitivity: float  # m per (m/s^2)
    overridden: tuple[str, ...] = ()


def total_mass(geometry: DeviceGeometry, material: MaterialProps) -> float:
    """Moving mass: the proof-mass plates plus all movable fingers.

    Parameters
    ----------
    geometry, material
        Device description.  Only the movable fingers count; fixed fingers
        are anchored and do not move.

    Returns
    -------
    float
        Mass in kg.
    """
    plate = (
        geometry.proof_mass_length
        * geometry.proof_mass_width
        * geometry.proof_mass_thickness
    )
    finger = geometry.finger_length * geometry.finger_breadth * geometry.device_thickness
    volume = geometry.n_proof_masses * plate + geometry.n_movable_fingers * finger
    return material.density * volume


def spring_constant(geometry: DeviceGeometry, material: MaterialProps) -> float:
    """Lateral stiffness of the folded-beam suspension.

    Four folded beams act in parallel; each folded pair behaves as two
    guided-end beams in series, which collapses to

        K = E * t * W^3 / (4 * L^3)

    with ``t`` the structural thickness, ``W`` the beam width and ``L`` a
    single beam segment length.
    """
    w_over_l = geometry.beam_width / geometry.beam_length
    return material.youngs_modulus * geometry.device_thickness * w_over_l**3 / 4.0


def static_capacitance(geometry: DeviceGeometry, material: MaterialProps) -> float:
    """Rest capacitance of one half of the differential comb, in F."""
    # Same factoring as differential_capacitance so C1(0) == C2(0) == C0
    # holds bit-exactly.
    scale = (
        material.permittivity
        * geometry.n_movable_fingers
        * geometry.device_thickness
        / geometry.finger_gap
    )
    return scale * geometry.initial_overlap


def differential_capacitance(
    geometry: DeviceGeometry, material: MaterialProps, displacement: float
) -> tuple[float, float]:
    """Capacitances (C1, C2) of the two comb halves at a given displacement.

    The movable fingers slide along their length, so one half gains overlap
    while the other loses it:

        C1 = eps * N * (x1 + x) * t / d0
        C2 = eps * N * (x1 - x) * t / d0

    Raises
    ------
    OverlapExceededError
        If ``abs(displacement)`` exceeds the rest overlap ``x1`` (the fingers
        would disengage on one side).
    """
    x1 = geometry.initial_overlap
    if abs(displacement) > x1:
        raise OverlapExceededError(
            f"displacement {displacement!r} m exceeds finger overlap {x1!r} m"
        )
    scale = (
        material.permittivity
        * geometry.n_movable_fingers
        * geometry.device_thickness
        / geometry.finger_gap
    )
    return scale * (x1 + displacement), scale * (x1 - displacement)


def damping_coefficient(geometry: DeviceGeometry, material: MaterialProps) -> float:
    """Squeeze-film damping of the air in the finger gaps, in N*s/m.

    Long-plate squeeze-film result applied per finger face:

        b = N * mu_eff * l_f * (t / d0)^3
    """
    return (
        geometry.n_movable_fingers
        * material.effective_viscosity
        * geometry.finger_length
        * (geometry.device_thickness / geometry.finger_gap) ** 3
    )


def natural_frequency(mass: float, stiffness: float) -> tuple[float, float]:
    """Undamped natural frequency from lumped mass and stiffness.

    Returns
    -------
    (omega_n, f_n)
        Angular frequency in rad/s and cyclic frequency in Hz.
    """
    _require_positive("mass", mass)
    _require_positive("stiffness", stiffness)
    omega_n = math.sqrt(stiffness / mass)
    return omega_n, omega_n / (2.0 * math.pi)


def damping_ratio(damping: float, mass: float, omega_n: float) -> float:
    """zeta = b / (2 m omega_n); zero damping is allowed."""
    if damping < 0:
        raise ValueError(f"damping must be >= 0, got {damping!r}")
    _require_positive("mass", mass)
    _require_positive("omega_n", omega_n)
    return damping / (2.0 * mass * omega_n)


def displacement_sensitivity(mass: float, stiffness: float) -> float:
    """Static displacement per unit acceleration, S_d = m / K = 1 / omega_n^2."""
    _require_positive("mass", mass)
    _require_positive("stiffness", stiffness)
    return mass / stiffness


def static_displacement(sensitivity: float, acceleration: float) -> float:
    """Steady-state deflection in m for an acceleration in m/s^2."""
    _require_positive("sensitivity", sensitivity)
    return sensitivity * acceleration


def analytic_step_metrics(omega_n: float, zeta: float) -> tuple[float, float]:
    """Closed-form step-response timing for an underdamped second-order system.

    Rise time is the first crossing of the final value; settling time is the
    classical 2 percent envelope estimate:

        t_r = (pi - atan(sqrt(1 - zeta^2) / zeta)) / (omega_n sqrt(1 - zeta^2))
        t_s = 4 / (zeta omega_n)

    Both are estimates built from the response envelope; a sampled trajectory
    measured against the same 2 percent band settles somewhat earlier because
    the oscillation spends part of each cycle inside the band.

    Returns
    -------
    (t_r, t_s)
        Rise and settling times in seconds.

    Raises
    ------
    NotUnderdampedError
        If zeta is outside (0, 1).
    """
    _require_positive("omega_n", omega_n)
    if not 0.0 < zeta < 1.0:
        raise NotUnderdampedError(f"zeta must be in (0, 1), got {zeta!r}")
    root = math.sqrt(1.0 - zeta * zeta)
    t_r = (math.pi - math.atan2(root, zeta)) / (omega_n * root)
    t_s = 4.0 / (zeta * omega_n)
    return t_r, t_s


def max_safe_acceleration(
    sensitivity: float, gap: float, safety_factor: float = 1.0
) -> float:
    """Largest acceleration (m/s^2) before the deflection reaches the gap.

    ``safety_factor`` scales the allowed fraction of the gap; 1.0 permits
    deflection right up to finger contact.
    """
    _require_positive("sensitivity", sensitivity)
    _require_positive("gap", gap)
    _require_positive("safety_factor", safety_factor)
    return safety_factor * gap / sensitivity


def derive_all(
    geometry: DeviceGeometry,
    material: MaterialProps,
    overrides: ModelOverrides | None = None,
) -> DerivedParams:
    """Evaluate the full lumped model, applying any overrides.

    Mass and stiffness overrides replace their formula values before the
    dynamic quantities (omega_n, f_n, zeta, sensitivity) are computed, so the
    result stays internally consistent.  A sensitivity override then replaces
    only the sensitivity; it deliberately does not back-propagate into
    omega_n or zeta, since it usually encodes an independent calibration.
    """
    ov = overrides if overrides is not None else ModelOverrides()
    applied: list[str] = []

    mass = total_mass(geometry, material)
    if ov.mass is not None:
        mass = ov.mass
        applied.append("mass")

    stiffness = spring_constant(geometry, material)
    if ov.stiffness is not None:
        stiffness = ov.stiffness
        applied.append("stiffness")

    c0 = static_capacitance(geometry, material)
    b = damping_coefficient(geometry, material)
    omega_n, f_n = natural_frequency(mass, stiffness)
    zeta = damping_ratio(b, mass, omega_n)

    sensitivity = displacement_sensitivity(mass, stiffness)
    if ov.sensitivity is not None:
        sensitivity = ov.sensitivity
        applied.append("sensitivity")

    return DerivedParams(
        mass=mass,
        stiffness=stiffness,
        static_capacitance=c0,
        damping_coefficient=b,
        omega_n=omega_n,
        f_n=f_n,
        zeta=zeta,
        sensitivity=sensitivity,
        overridden=tuple(applied),
    )
