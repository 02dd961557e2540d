"""Plain-text device configuration files.

One assignment per line, ``section.key = value [unit]``, with ``#`` starting
a comment.  Values are stored in SI; the optional unit token converts common
engineering units on the way in.  Example::

    # comb geometry
    geometry.finger_length = 250 um
    geometry.finger_gap    = 5 um
    material.youngs_modulus = 170 GPa
    overrides.stiffness = 10
    sim.g_value = 9.80665

Sections: ``geometry`` (required), ``material``, ``overrides``, ``sim`` and
``freq`` (all optional, with documented defaults).
"""

from __future__ import annotations

from dataclasses import dataclass

from .device import (
    G_STANDARD,
    DeviceGeometry,
    MaterialProps,
    ModelOverrides,
)

UNIT_FACTORS = {
    "um": 1e-6,
    "mm": 1e-3,
    "m": 1.0,
    "kg_per_m3": 1.0,
    "GPa": 1e9,
    "Pa_s": 1.0,
    "pF": 1e-12,
    "F": 1.0,
}

_LENGTH_UNITS = ("um", "mm", "m")
_CAPACITANCE_UNITS = ("pF", "F")


class ConfigError(ValueError):
    """Malformed configuration text; the message carries the line number."""


@dataclass(frozen=True)
class Config:
    """A parsed configuration: device description plus run settings."""

    geometry: DeviceGeometry
    material: MaterialProps
    overrides: ModelOverrides
    g_value: float = G_STANDARD  # m/s^2 per g for every g-denominated input
    dt: float = 1e-7  # s, default integrator step
    duration: float = 15e-3  # s, default simulated span
    settling_band: float = 0.02  # fraction of final value
    f_min: float = 10.0  # Hz
    f_max: float = 100e3  # Hz
    n_points: int = 512
    spacing: str = "log"

    def __post_init__(self) -> None:
        for name in ("g_value", "dt", "duration", "f_min"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)!r}")
        if not 0.0 < self.settling_band < 1.0:
            raise ValueError(f"settling_band must be in (0, 1), got {self.settling_band!r}")
        if not self.f_max > self.f_min:
            raise ValueError(f"f_max must exceed f_min, got {self.f_min!r} .. {self.f_max!r}")
        if self.n_points < 2:
            raise ValueError(f"n_points must be >= 2, got {self.n_points!r}")
        if self.spacing not in ("log", "linear"):
            raise ValueError(f"spacing must be 'log' or 'linear', got {self.spacing!r}")


# key -> (accepted unit tokens, value kind); kind "float" | "int" | "choice"
_GEOMETRY_KEYS: dict[str, tuple[tuple[str, ...], str]] = {
    "proof_mass_length": (_LENGTH_UNITS, "float"),
    "proof_mass_width": (_LENGTH_UNITS, "float"),
    "proof_mass_thickness": (_LENGTH_UNITS, "float"),
    "n_proof_masses": ((), "int"),
    "n_movable_fingers": ((), "int"),
    "n_fixed_fingers": ((), "int"),
    "finger_length": (_LENGTH_UNITS, "float"),
    "finger_breadth": (_LENGTH_UNITS, "float"),
    "device_thickness": (_LENGTH_UNITS, "float"),
    "finger_gap": (_LENGTH_UNITS, "float"),
    "beam_length": (_LENGTH_UNITS, "float"),
    "beam_width": (_LENGTH_UNITS, "float"),
    "initial_overlap": (_LENGTH_UNITS, "float"),
    "pad_metal_length": (_LENGTH_UNITS, "float"),
    "pad_metal_width": (_LENGTH_UNITS, "float"),
    "pad_metal_thickness": (_LENGTH_UNITS, "float"),
}
_REQUIRED_GEOMETRY = (
    "proof_mass_length",
    "proof_mass_width",
    "proof_mass_thickness",
    "n_proof_masses",
    "n_movable_fingers",
    "n_fixed_fingers",
    "finger_length",
    "finger_breadth",
    "device_thickness",
    "finger_gap",
    "beam_length",
    "beam_width",
)
_MATERIAL_KEYS = {
    "youngs_modulus": (("GPa",), "float"),
    "density": (("kg_per_m3",), "float"),
    "permittivity": ((), "float"),
    "effective_viscosity": (("Pa_s",), "float"),
}
_OVERRIDE_KEYS = {
    "stiffness": ((), "float"),
    "mass": ((), "float"),
    "sensitivity": ((), "float"),
}
_SIM_KEYS = {
    "g_value": ((), "float"),
    "dt": ((), "float"),
    "duration": ((), "float"),
    "settling_band": ((), "float"),
}
_FREQ_KEYS = {
    "f_min": ((), "float"),
    "f_max": ((), "float"),
    "n_points": ((), "int"),
    "spacing": ((), "choice"),
}
_SECTIONS = {
    "geometry": _GEOMETRY_KEYS,
    "material": _MATERIAL_KEYS,
    "overrides": _OVERRIDE_KEYS,
    "sim": _SIM_KEYS,
    "freq": _FREQ_KEYS,
}


def _parse_scalar(raw: str, units: tuple[str, ...], kind: str, key: str, line_no: int):
    tokens = raw.split()
    if not tokens:
        raise ConfigError(f"line {line_no}: missing value for {key}")
    if kind == "choice":
        if len(tokens) != 1:
            raise ConfigError(f"line {line_no}: {key} takes a single word, got {raw!r}")
        return tokens[0]
    if len(tokens) > 2:
        raise ConfigError(f"line {line_no}: too many tokens in value {raw!r}")
    try:
        value = float(tokens[0])
    except ValueError:
        raise ConfigError(
            f"line {line_no}: non-numeric value {tokens[0]!r} for {key}"
        ) from None
    if len(tokens) == 2:
        unit = tokens[1]
        if unit not in UNIT_FACTORS:
            raise ConfigError(
                f"line {line_no}: unknown unit {unit!r}; known units: "
                f"{', '.join(sorted(UNIT_FACTORS))}"
            )
        if unit not in units:
            allowed = ", ".join(units) if units else "none (SI value only)"
            raise ConfigError(
                f"line {line_no}: unit {unit!r} not valid for {key}; accepted: {allowed}"
            )
        value *= UNIT_FACTORS[unit]
    if kind == "int":
        if value != int(value):
            raise ConfigError(f"line {line_no}: {key} must be an integer, got {tokens[0]!r}")
        return int(value)
    return value


def parse_config(text: str) -> Config:
    """Parse configuration text into a :class:`Config`.

    Raises
    ------
    ConfigError
        On syntax errors, unknown keys or units, non-numeric values,
        duplicated or missing keys, and any physical-invariant violation
        raised while assembling the device description.
    """
    seen: dict[str, dict[str, object]] = {name: {} for name in _SECTIONS}
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {line_no}: expected 'section.key = value', got {raw_line!r}")
        lhs, rhs = line.split("=", 1)
        dotted = lhs.strip()
        if dotted.count(".") != 1:
            raise ConfigError(f"line {line_no}: key must look like 'section.key', got {dotted!r}")
        section, key = dotted.split(".")
        if section not in _SECTIONS:
            raise ConfigError(
                f"line {line_no}: unknown section {section!r}; expected one of "
                f"{', '.join(_SECTIONS)}"
            )
        table = _SECTIONS[section]
        if key not in table:
            raise ConfigError(f"line {line_no}: unknown key {dotted!r}")
        if key in seen[section]:
            raise ConfigError(f"line {line_no}: duplicate key {dotted!r}")
        units, kind = table[key]
        seen[section][key] = _parse_scalar(rhs.strip(), units, kind, dotted, line_no)

    for key in _REQUIRED_GEOMETRY:
        if key not in seen["geometry"]:
            raise ConfigError(f"missing required key geometry.{key}")

    try:
        geometry = DeviceGeometry(**seen["geometry"])
        material = MaterialProps(**seen["material"])
        overrides = ModelOverrides(**seen["overrides"])
        return Config(
            geometry=geometry,
            material=material,
            overrides=overrides,
            **seen["sim"],
            **seen["freq"],
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invariant violation: {exc}") from exc


def load_config(path) -> Config:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config(handle.read())


def serialize_config(config: Config) -> str:
    """Render a Config back to text (SI values, full float precision).

    The output reparses to an identical Config, so files can be regenerated
    without drift.
    """
    lines: list[str] = []

    def emit(section: str, key: str, value) -> None:
        rendered = repr(value) if isinstance(value, float) else str(value)
        lines.append(f"{section}.{key} = {rendered}")

    for key in _GEOMETRY_KEYS:
        value = getattr(config.geometry, key)
        if value is None:
            continue
        emit("geometry", key, value)
    for key in _MATERIAL_KEYS:
        emit("material", key, getattr(config.material, key))
    for key in _OVERRIDE_KEYS:
        value = getattr(config.overrides, key)
        if value is not None:
            emit("overrides", key, value)
    for key in _SIM_KEYS:
        emit("sim", key, getattr(config, key))
    for key in _FREQ_KEYS:
        emit("freq", key, getattr(config, key))
    return "\n".join(lines) + "\n"
