"""Time-domain response of the accelerometer as a driven second-order system.

The proof mass obeys

    x'' + 2 zeta omega_n x' + omega_n^2 x = omega_n^2 * dc_gain * a(t)

where ``a(t)`` is the applied acceleration and ``dc_gain`` is the static
displacement per unit acceleration (m per m/s^2), so a constant input of
``a`` settles at ``dc_gain * a``.  A fixed-step RK4 integrator produces
trajectories for arbitrary inputs; the classical closed form covers steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .device import DerivedParams, NotUnderdampedError

# Fixed-step RK4 needs a healthy number of samples per natural period to hold
# its order; below this the trajectory is quietly garbage, so it is an error.
MIN_STEPS_PER_PERIOD = 50


class TimestepTooLargeError(ValueError):
    """dt does not resolve the natural period."""


class NeverSettledError(ValueError):
    """Trajectory ends outside the settling band."""


@dataclass(frozen=True)
class SecondOrderModel:
    """Lumped oscillator: natural frequency, damping ratio, static gain."""

    omega_n: float  # rad/s
    zeta: float  # dimensionless, >= 0
    dc_gain: float  # m per (m/s^2)

    def __post_init__(self) -> None:
        if not self.omega_n > 0:
            raise ValueError(f"omega_n must be > 0, got {self.omega_n!r}")
        if self.zeta < 0:
            raise ValueError(f"zeta must be >= 0, got {self.zeta!r}")
        if not self.dc_gain > 0:
            raise ValueError(f"dc_gain must be > 0, got {self.dc_gain!r}")

    @property
    def f_n(self) -> float:
        return self.omega_n / (2.0 * math.pi)

    @classmethod
    def from_derived(cls, params: DerivedParams) -> "SecondOrderModel":
        return cls(omega_n=params.omega_n, zeta=params.zeta, dc_gain=params.sensitivity)


@dataclass(frozen=True)
class Waveform:
    """Acceleration input a(t).  Build these with :func:`make_waveform`."""

    kind: str  # "step" | "sine" | "chirp" | "samples"
    amplitude: float = 0.0  # m/s^2
    frequency: float = 0.0  # Hz
    end_frequency: float = 0.0  # Hz, chirp only
    sweep_time: float = 0.0  # s, chirp only
    times: np.ndarray | None = None  # samples only
    values: np.ndarray | None = None  # samples only

    def __call__(self, t):
        """Evaluate at scalar or array t (s); inputs are zero before t = 0."""
        t = np.asarray(t, dtype=float)
        if self.kind == "step":
            out = np.where(t >= 0.0, self.amplitude, 0.0)
        elif self.kind == "sine":
            out = self.amplitude * np.sin(2.0 * math.pi * self.frequency * t)
            out = np.where(t >= 0.0, out, 0.0)
        elif self.kind == "chirp":
            rate = (self.end_frequency - self.frequency) / self.sweep_time
            phase = 2.0 * math.pi * (self.frequency * t + 0.5 * rate * t * t)
            out = np.where(t >= 0.0, self.amplitude * np.sin(phase), 0.0)
        else:  # samples; constructor guarantees the arrays exist
            out = np.interp(t, self.times, self.values)
        return float(out) if out.ndim == 0 else out


def make_waveform(kind: str, **params) -> Waveform:
    """Construct an input waveform.

    kind="step"     params: amplitude
    kind="sine"     params: amplitude, frequency
    kind="chirp"    params: amplitude, frequency, end_frequency, sweep_time
    kind="samples"  params: times, values (piecewise-linear interpolation)
    """
    def _finite(name: str) -> float:
        if name not in params:
            raise ValueError(f"waveform kind {kind!r} requires parameter {name!r}")
        value = float(params[name])
        if not math.isfinite(value):
            raise ValueError(f"waveform parameter {name!r} must be finite, got {value!r}")
        return value

    allowed = {
        "step": {"amplitude"},
        "sine": {"amplitude", "frequency"},
        "chirp": {"amplitude", "frequency", "end_frequency", "sweep_time"},
        "samples": {"times", "values"},
    }
    if kind not in allowed:
        raise ValueError(f"unknown waveform kind {kind!r}; expected one of {sorted(allowed)}")
    extra = set(params) - allowed[kind]
    if extra:
        raise ValueError(f"waveform kind {kind!r} does not take {sorted(extra)}")

    if kind == "step":
        return Waveform(kind="step", amplitude=_finite("amplitude"))
    if kind == "sine":
        frequency = _finite("frequency")
        if frequency <= 0:
            raise ValueError(f"sine frequency must be > 0, got {frequency!r}")
        return Waveform(kind="sine", amplitude=_finite("amplitude"), frequency=frequency)
    if kind == "chirp":
        f0, f1 = _finite("frequency"), _finite("end_frequency")
        sweep_time = _finite("sweep_time")
        if f0 <= 0 or f1 <= 0:
            raise ValueError("chirp frequencies must be > 0")
        if sweep_time <= 0:
            raise ValueError(f"chirp sweep_time must be > 0, got {sweep_time!r}")
        return Waveform(
            kind="chirp",
            amplitude=_finite("amplitude"),
            frequency=f0,
            end_frequency=f1,
            sweep_time=sweep_time,
        )

    times = np.asarray(params.get("times"), dtype=float)
    values = np.asarray(params.get("values"), dtype=float)
    if times.ndim != 1 or times.shape != values.shape or times.size < 2:
        raise ValueError("sampled waveform needs matching 1-D times and values, >= 2 points")
    if not (np.all(np.isfinite(times)) and np.all(np.isfinite(values))):
        raise ValueError("sampled waveform contains non-finite entries")
    if np.any(np.diff(times) <= 0):
        raise ValueError("sampled waveform times must be strictly increasing")
    times = times.copy()
    values = values.copy()
    times.flags.writeable = False
    values.flags.writeable = False
    return Waveform(kind="samples", times=times, values=values)


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled response, including the t = 0 initial condition."""

    times: np.ndarray  # s
    positions: np.ndarray  # m
    velocities: np.ndarray  # m/s
    dt: float  # s
    model: SecondOrderModel

    def __post_init__(self) -> None:
        if not (len(self.times) == len(self.positions) == len(self.velocities)):
            raise ValueError("times, positions and velocities must have equal length")
        if not self.dt > 0:
            raise ValueError(f"dt must be > 0, got {self.dt!r}")


def integrate(
    model: SecondOrderModel, waveform: Waveform, dt: float, duration: float
) -> Trajectory:
    """Integrate the oscillator from rest with fixed-step RK4.

    Parameters
    ----------
    model
        Oscillator parameters.
    waveform
        Acceleration input; evaluated at the step endpoints and midpoints.
    dt
        Time step in s.  Must satisfy dt <= 1 / (MIN_STEPS_PER_PERIOD * f_n).
    duration
        Total simulated time in s; the trajectory has round(duration/dt) + 1
        samples including t = 0.

    Raises
    ------
    TimestepTooLargeError
        When dt is too coarse for the model's natural period.
    """
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt!r}")
    if not duration > 0:
        raise ValueError(f"duration must be > 0, got {duration!r}")
    dt_max = 1.0 / (MIN_STEPS_PER_PERIOD * model.f_n)
    if dt > dt_max:
        raise TimestepTooLargeError(
            f"dt = {dt!r} s exceeds {dt_max!r} s, the limit for f_n = {model.f_n!r} Hz"
        )

    n_steps = int(round(duration / dt))
    if n_steps < 1:
        raise ValueError("duration must cover at least one step")
    times = np.arange(n_steps + 1) * dt

    a_full = np.asarray(waveform(times), dtype=float)
    a_half = np.asarray(waveform(times[:-1] + 0.5 * dt), dtype=float)
    if not (np.all(np.isfinite(a_full)) and np.all(np.isfinite(a_half))):
        raise ValueError("waveform produced non-finite acceleration samples")

    wn2 = model.omega_n * model.omega_n
    two_zw = 2.0 * model.zeta * model.omega_n
    gain = model.dc_gain * wn2

    xs = np.empty(n_steps + 1)
    vs = np.empty(n_steps + 1)
    x = 0.0
    v = 0.0
    xs[0] = x
    vs[0] = v
    for i in range(n_steps):
        f0 = gain * a_full[i]
        fm = gain * a_half[i]
        f1 = gain * a_full[i + 1]

        k1x = v
        k1v = f0 - two_zw * v - wn2 * x

        x2 = x + 0.5 * dt * k1x
        v2 = v + 0.5 * dt * k1v
        k2x = v2
        k2v = fm - two_zw * v2 - wn2 * x2

        x3 = x + 0.5 * dt * k2x
        v3 = v + 0.5 * dt * k2v
        k3x = v3
        k3v = fm - two_zw * v3 - wn2 * x3

        x4 = x + dt * k3x
        v4 = v + dt * k3v
        k4x = v4
        k4v = f1 - two_zw * v4 - wn2 * x4

        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        xs[i + 1] = x
        vs[i + 1] = v

    return Trajectory(times=times, positions=xs, velocities=vs, dt=dt, model=model)


def closed_form_step(model: SecondOrderModel, amplitude: float, t):
    """Exact step response of an underdamped oscillator starting from rest.

    Evaluates

        x(t) = A G [1 - e^(-zeta wn t) (cos(wd t) + zeta/sqrt(1-zeta^2) sin(wd t))]

    with wd = wn sqrt(1 - zeta^2), at scalar or array ``t``.

    Raises
    ------
    NotUnderdampedError
        Unless 0 < zeta < 1.
    """
    if not 0.0 < model.zeta < 1.0:
        raise NotUnderdampedError(f"zeta must be in (0, 1), got {model.zeta!r}")
    t = np.asarray(t, dtype=float)
    zeta = model.zeta
    root = math.sqrt(1.0 - zeta * zeta)
    wd = model.omega_n * root
    envelope = np.exp(-zeta * model.omega_n * t)
    ringing = np.cos(wd * t) + (zeta / root) * np.sin(wd * t)
    out = amplitude * model.dc_gain * (1.0 - envelope * ringing)
    out = np.where(t >= 0.0, out, 0.0)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class StepMetrics:
    rise_time: float  # s
    settling_time: float  # s
    overshoot_pct: float  # percent of final value, >= 0
    peak_time: float  # s
    final_value: float  # m
    rise_definition: str  # "full" (0 to 100%) or "10-90"


def _cross_time(t0, t1, y0, y1, level):
    # Linear interpolation of the crossing instant between two samples.
    if y1 == y0:
        return t0
    return t0 + (level - y0) * (t1 - t0) / (y1 - y0)


def step_metrics(
    trajectory: Trajectory,
    final_value: float,
    settling_band: float = 0.02,
    rise_definition: str = "full",
) -> StepMetrics:
    """Measure rise time, settling time and overshoot from a sampled step.

    Rise time is the first crossing of the final value ("full", the
    convention used throughout this package, meaningful only for systems
    that overshoot) or the 10 to 90 percent transit ("10-90").  Settling
    time is the last instant the normalized error ``|x/final - 1|`` crosses
    ``settling_band``, found by linear interpolation between samples.

    Raises
    ------
    NeverSettledError
        If the trajectory ends outside the band (simulate longer).
    ValueError
        If the response never completes the requested rise.
    """
    if not (math.isfinite(final_value) and final_value != 0.0):
        raise ValueError(f"final_value must be finite and nonzero, got {final_value!r}")
    if not 0.0 < settling_band < 1.0:
        raise ValueError(f"settling_band must be in (0, 1), got {settling_band!r}")
    if rise_definition not in ("full", "10-90"):
        raise ValueError(f"rise_definition must be 'full' or '10-90', got {rise_definition!r}")

    t = trajectory.times
    # Normalize so the target is 1.0 regardless of the sign of final_value.
    y = trajectory.positions / final_value

    if rise_definition == "full":
        above = np.nonzero(y >= 1.0)[0]
        if above.size == 0:
            raise ValueError("response never reaches the final value; cannot measure rise time")
        i = above[0]
        rise = 0.0 if i == 0 else _cross_time(t[i - 1], t[i], y[i - 1], y[i], 1.0)
    else:
        lo = np.nonzero(y >= 0.1)[0]
        hi = np.nonzero(y >= 0.9)[0]
        if lo.size == 0 or hi.size == 0:
            raise ValueError("response never completes the 10-90 transit")
        i, j = lo[0], hi[0]
        t10 = 0.0 if i == 0 else _cross_time(t[i - 1], t[i], y[i - 1], y[i], 0.1)
        t90 = 0.0 if j == 0 else _cross_time(t[j - 1], t[j], y[j - 1], y[j], 0.9)
        rise = t90 - t10

    peak_idx = int(np.argmax(y))
    overshoot = max(0.0, (y[peak_idx] - 1.0) * 100.0)

    deviation = np.abs(y - 1.0)
    outside = deviation > settling_band
    if outside[-1]:
        raise NeverSettledError(
            f"trajectory ends outside the {settling_band:.0%} band; extend the duration"
        )
    if not outside.any():
        settling = 0.0
    else:
        last = int(np.nonzero(outside)[0][-1])
        settling = _cross_time(
            t[last], t[last + 1], deviation[last], deviation[last + 1], settling_band
        )

    return StepMetrics(
        rise_time=float(rise),
        settling_time=float(settling),
        overshoot_pct=float(overshoot),
        peak_time=float(t[peak_idx]),
        final_value=float(final_value),
        rise_definition=rise_definition,
    )
