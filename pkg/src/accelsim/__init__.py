"""Analytic modeling and simulation of comb-drive capacitive accelerometers.

The package splits along the physics: :mod:`accelsim.device` holds the
closed-form lumped-parameter formulas, :mod:`accelsim.dynamics` integrates
the second-order equation of motion, :mod:`accelsim.freqresp` samples the
transfer function, :mod:`accelsim.sweep` explores the design space, and
:mod:`accelsim.config` / :mod:`accelsim.output` read device descriptions and
write deterministic CSV.
"""

from .config import Config, ConfigError, load_config, parse_config, serialize_config
from .device import (
    G_STANDARD,
    DerivedParams,
    DeviceGeometry,
    MaterialProps,
    ModelOverrides,
    derive_all,
)
from .dynamics import (
    SecondOrderModel,
    StepMetrics,
    Trajectory,
    Waveform,
    closed_form_step,
    integrate,
    make_waveform,
    step_metrics,
)
from .freqresp import FrequencyResponse, ResonanceMetrics, bode, resonance_metrics
from .output import ReportRow, reference_report, write_csv
from .sweep import (
    ConstraintReport,
    InverseDesignResult,
    SweepResult,
    SweepSpec,
    constraint_check,
    solve_for_target_frequency,
    sweep_acceleration,
    sweep_parameter,
)

__version__ = "0.1.0"

__all__ = [
    "Config",
    "ConfigError",
    "ConstraintReport",
    "DerivedParams",
    "DeviceGeometry",
    "FrequencyResponse",
    "G_STANDARD",
    "InverseDesignResult",
    "MaterialProps",
    "ModelOverrides",
    "ReportRow",
    "ResonanceMetrics",
    "SecondOrderModel",
    "StepMetrics",
    "SweepResult",
    "SweepSpec",
    "Trajectory",
    "Waveform",
    "bode",
    "closed_form_step",
    "constraint_check",
    "derive_all",
    "integrate",
    "load_config",
    "make_waveform",
    "parse_config",
    "reference_report",
    "resonance_metrics",
    "serialize_config",
    "solve_for_target_frequency",
    "step_metrics",
    "sweep_acceleration",
    "sweep_parameter",
    "write_csv",
    "__version__",
]
