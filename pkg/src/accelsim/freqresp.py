"""Frequency response of the accelerometer displacement per unit acceleration.

For the oscillator x'' + 2 zeta wn x' + wn^2 x = wn^2 G a(t), the transfer
function from acceleration to displacement is

    H(j w) = G wn^2 / (wn^2 - w^2 + 2 j zeta wn w)

with DC value G (m per m/s^2).  For zeta < 1/sqrt(2) the magnitude peaks at
w_r = wn sqrt(1 - 2 zeta^2), slightly below the natural frequency.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .dynamics import SecondOrderModel


class FlatResponseError(ValueError):
    """Magnitude has no interior peak; the model does not resonate."""


class BoundaryPeakWarning(UserWarning):
    """The magnitude maximum sits on the grid edge; metrics are unrefined."""


@dataclass(frozen=True)
class FrequencyResponse:
    """Complex response sampled on a frequency grid."""

    frequency_hz: np.ndarray
    response: np.ndarray  # complex, m per (m/s^2)
    model: SecondOrderModel

    def __post_init__(self) -> None:
        if self.frequency_hz.shape != self.response.shape:
            raise ValueError("frequency and response grids must match")
        if self.frequency_hz.size < 2:
            raise ValueError("response needs at least 2 grid points")
        if np.any(np.diff(self.frequency_hz) <= 0):
            raise ValueError("frequency grid must be strictly increasing")

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.response)

    @property
    def phase_deg(self) -> np.ndarray:
        """Phase in degrees, continuous in (-180, 0]."""
        return np.degrees(np.angle(self.response))

    def magnitude_db_rel_dc(self) -> np.ndarray:
        """Magnitude in dB relative to the DC gain (0 dB at DC)."""
        return 20.0 * np.log10(self.magnitude / self.model.dc_gain)


@dataclass(frozen=True)
class ResonanceMetrics:
    peak_frequency: float  # Hz
    peak_magnitude: float  # m per (m/s^2)
    quality_factor: float  # peak magnitude over DC magnitude
    dc_magnitude: float  # m per (m/s^2)


def transfer_function_eval(model: SecondOrderModel, omega):
    """H(j omega) at scalar or array angular frequency (rad/s)."""
    omega = np.asarray(omega, dtype=float)
    wn2 = model.omega_n * model.omega_n
    denom = (wn2 - omega * omega) + 1j * (2.0 * model.zeta * model.omega_n * omega)
    # Grouping wn2/denom first makes H(0) equal dc_gain to the last bit.
    out = model.dc_gain * (wn2 / denom)
    return complex(out) if out.ndim == 0 else out


def bode(
    model: SecondOrderModel,
    f_min: float = 10.0,
    f_max: float = 100e3,
    n_points: int = 512,
    spacing: str = "log",
) -> FrequencyResponse:
    """Sample H on a log- or linear-spaced frequency grid.

    Parameters
    ----------
    model
        Oscillator parameters.
    f_min, f_max
        Grid endpoints in Hz, 0 < f_min < f_max.
    n_points
        Number of grid points, >= 2.
    spacing
        "log" or "linear".
    """
    if not f_min > 0:
        raise ValueError(f"f_min must be > 0, got {f_min!r}")
    if not f_max > f_min:
        raise ValueError(f"f_max must exceed f_min, got {f_min!r} .. {f_max!r}")
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points!r}")
    if spacing == "log":
        freq = np.logspace(math.log10(f_min), math.log10(f_max), n_points)
    elif spacing == "linear":
        freq = np.linspace(f_min, f_max, n_points)
    else:
        raise ValueError(f"spacing must be 'log' or 'linear', got {spacing!r}")
    # Guard against logspace rounding drifting the endpoints off the request.
    freq[0], freq[-1] = f_min, f_max
    response = transfer_function_eval(model, 2.0 * math.pi * freq)
    return FrequencyResponse(frequency_hz=freq, response=response, model=model)


def resonance_metrics(resp: FrequencyResponse) -> ResonanceMetrics:
    """Locate the magnitude peak and quality factor of a sampled response.

    The peak is refined with a three-point quadratic fit in log-log
    coordinates around the grid maximum, which recovers the true peak far
    more accurately than the grid resolution.  Q is the ratio of peak to DC
    magnitude (for light damping this equals 1 / (2 zeta sqrt(1 - zeta^2))).

    Raises
    ------
    FlatResponseError
        If the magnitude maximum is at the low-frequency edge: the response
        only rolls off, so there is no resonant peak to report.

    Warns
    -----
    BoundaryPeakWarning
        If the maximum is at the high-frequency edge; the grid point itself
        is reported without refinement.
    """
    if resp.frequency_hz.size < 3:
        raise ValueError("resonance metrics need at least 3 grid points")
    mag = resp.magnitude
    dc = abs(transfer_function_eval(resp.model, 0.0))
    peak_idx = int(np.argmax(mag))

    if peak_idx == 0:
        raise FlatResponseError(
            "magnitude is highest at the lowest grid frequency; no resonant peak "
            "(zeta >= 1/sqrt(2), or the grid starts beyond the peak)"
        )
    if peak_idx == mag.size - 1:
        warnings.warn(
            "magnitude peak at the top of the frequency grid; raise f_max to refine",
            BoundaryPeakWarning,
            stacklevel=2,
        )
        peak_f = float(resp.frequency_hz[peak_idx])
        peak_m = float(mag[peak_idx])
        return ResonanceMetrics(peak_f, peak_m, peak_m / dc, float(dc))

    # Quadratic through the three points around the maximum, in log-log
    # coordinates where the peak of this response is nearly parabolic.
    lf = np.log10(resp.frequency_hz[peak_idx - 1 : peak_idx + 2])
    lm = np.log10(mag[peak_idx - 1 : peak_idx + 2])
    a, b, c = np.polyfit(lf, lm, 2)
    if a >= 0:  # degenerate fit; fall back to the grid point
        peak_f = float(resp.frequency_hz[peak_idx])
        peak_m = float(mag[peak_idx])
    else:
        lf_peak = -b / (2.0 * a)
        peak_f = float(10.0**lf_peak)
        peak_m = float(10.0 ** (a * lf_peak * lf_peak + b * lf_peak + c))
    return ResonanceMetrics(peak_f, peak_m, peak_m / dc, float(dc))
