"""Transfer-function sampling and resonance-metric checks.

Reference numbers were evaluated by hand from H(jw) = G wn^2 / (wn^2 - w^2 +
2j zeta wn w) for the reference model before implementation: the true peak
sits at f_n sqrt(1 - 2 zeta^2) with quality factor 1/(2 zeta sqrt(1-zeta^2)).
"""

import math

import numpy as np
import pytest

from accelsim.dynamics import SecondOrderModel
from accelsim.freqresp import (
    BoundaryPeakWarning,
    FlatResponseError,
    FrequencyResponse,
    bode,
    resonance_metrics,
    transfer_function_eval,
)

REF_MODEL = SecondOrderModel(
    omega_n=16816.225395433357, zeta=0.03208220501222519, dc_gain=3.53625e-9
)
TRUE_PEAK_HZ = 2673.6292591802385
TRUE_Q = 15.592990431473812
MAG_AT_WN = 5.5112327825541954e-8  # dc_gain / (2 zeta)


class TestPointEvaluation:
    def test_dc_is_exactly_the_gain(self):
        h0 = transfer_function_eval(REF_MODEL, 0.0)
        assert h0 == complex(REF_MODEL.dc_gain, 0.0)

    def test_natural_frequency_point(self):
        h = transfer_function_eval(REF_MODEL, REF_MODEL.omega_n)
        assert abs(h) == pytest.approx(MAG_AT_WN, rel=1e-12)
        assert math.degrees(np.angle(h)) == -90.0

    def test_high_frequency_rolloff(self):
        omega = 1000.0 * REF_MODEL.omega_n
        h = transfer_function_eval(REF_MODEL, omega)
        assert abs(h) == pytest.approx(REF_MODEL.dc_gain * 1e-6, rel=1e-3)
        assert -180.0 < math.degrees(np.angle(h)) < -179.9

    def test_magnitude_matches_real_formula(self):
        # |H| from complex arithmetic vs the explicit square-root expression
        rng = np.random.default_rng(7)
        omega = 10.0 ** rng.uniform(0.0, 6.0, size=200)
        h = transfer_function_eval(REF_MODEL, omega)
        wn2 = REF_MODEL.omega_n**2
        explicit = (
            REF_MODEL.dc_gain
            * wn2
            / np.sqrt((wn2 - omega**2) ** 2 + (2 * REF_MODEL.zeta * REF_MODEL.omega_n * omega) ** 2)
        )
        np.testing.assert_allclose(np.abs(h), explicit, rtol=1e-12)

    def test_array_and_scalar_agree(self):
        omegas = np.array([0.0, 1e3, 1e4])
        batch = transfer_function_eval(REF_MODEL, omegas)
        singles = [transfer_function_eval(REF_MODEL, w) for w in omegas]
        np.testing.assert_array_equal(batch, singles)


class TestBodeSampling:
    def test_default_grid_shape(self):
        resp = bode(REF_MODEL)
        assert resp.frequency_hz.size == 512
        assert resp.frequency_hz[0] == 10.0
        assert resp.frequency_hz[-1] == 100e3
        ratios = resp.frequency_hz[1:] / resp.frequency_hz[:-1]
        np.testing.assert_allclose(ratios, ratios[0], rtol=1e-9)

    def test_linear_spacing(self):
        resp = bode(REF_MODEL, 100.0, 200.0, 11, spacing="linear")
        np.testing.assert_allclose(np.diff(resp.frequency_hz), 10.0, rtol=1e-12)

    def test_two_point_grid(self):
        resp = bode(REF_MODEL, 10.0, 1000.0, 2)
        assert list(resp.frequency_hz) == [10.0, 1000.0]

    def test_grid_maximum_lands_next_to_true_peak(self):
        resp = bode(REF_MODEL)
        nearest = int(np.argmin(np.abs(resp.frequency_hz - TRUE_PEAK_HZ)))
        assert int(np.argmax(resp.magnitude)) == nearest

    def test_phase_is_monotone_and_bounded(self):
        resp = bode(REF_MODEL)
        phase = resp.phase_deg
        assert np.all(phase <= 0.0)
        assert np.all(phase > -180.0)
        assert np.all(np.diff(phase) < 0.0)

    def test_db_scale_is_zero_at_dc_gain(self):
        resp = bode(REF_MODEL, 0.01, 100e3, 256)
        db = resp.magnitude_db_rel_dc()
        assert db[0] == pytest.approx(0.0, abs=1e-6)
        assert db[-1] < -60.0

    def test_invalid_ranges(self):
        with pytest.raises(ValueError):
            bode(REF_MODEL, 0.0, 100.0, 16)
        with pytest.raises(ValueError):
            bode(REF_MODEL, 100.0, 100.0, 16)
        with pytest.raises(ValueError):
            bode(REF_MODEL, 10.0, 100.0, 1)
        with pytest.raises(ValueError):
            bode(REF_MODEL, 10.0, 100.0, 16, spacing="cubic")


class TestResonanceMetrics:
    def test_reference_peak_and_q(self):
        metrics = resonance_metrics(bode(REF_MODEL))
        assert metrics.peak_frequency == pytest.approx(TRUE_PEAK_HZ, rel=5e-3)
        assert metrics.quality_factor == pytest.approx(TRUE_Q, rel=1e-2)
        assert metrics.dc_magnitude == REF_MODEL.dc_gain
        assert metrics.peak_magnitude == pytest.approx(TRUE_Q * REF_MODEL.dc_gain, rel=1e-2)

    def test_interpolation_beats_the_grid(self):
        # on the default grid the quadratic fit must land far inside one
        # grid step (~1.8%) of the true peak
        metrics = resonance_metrics(bode(REF_MODEL))
        assert abs(metrics.peak_frequency - TRUE_PEAK_HZ) / TRUE_PEAK_HZ < 1e-3

    def test_interpolated_phase_at_f_n(self):
        resp = bode(REF_MODEL)
        phase = float(np.interp(REF_MODEL.f_n, resp.frequency_hz, resp.phase_deg))
        assert phase == pytest.approx(-90.0, abs=0.5)

    def test_peak_tracks_damping(self):
        # peak frequency follows f_n sqrt(1 - 2 zeta^2) across models
        rng = np.random.default_rng(11)
        for _ in range(20):
            model = SecondOrderModel(
                omega_n=10.0 ** rng.uniform(2.0, 4.0),
                zeta=rng.uniform(0.02, 0.6),
                dc_gain=1e-6,
            )
            f_peak_true = model.f_n * math.sqrt(1.0 - 2.0 * model.zeta**2)
            resp = bode(model, f_peak_true / 30.0, f_peak_true * 30.0, 512)
            metrics = resonance_metrics(resp)
            assert metrics.peak_frequency == pytest.approx(f_peak_true, rel=5e-3)

    def test_heavily_damped_model_has_no_peak(self):
        model = SecondOrderModel(omega_n=REF_MODEL.omega_n, zeta=0.8, dc_gain=1e-9)
        with pytest.raises(FlatResponseError):
            resonance_metrics(bode(model))

    def test_grid_starting_above_peak_has_no_peak(self):
        with pytest.raises(FlatResponseError):
            resonance_metrics(bode(REF_MODEL, 5000.0, 100e3, 128))

    def test_grid_ending_below_peak_warns(self):
        with pytest.warns(BoundaryPeakWarning):
            metrics = resonance_metrics(bode(REF_MODEL, 10.0, 2000.0, 128))
        assert metrics.peak_frequency == 2000.0

    def test_needs_three_points(self):
        with pytest.raises(ValueError, match="3 grid points"):
            resonance_metrics(bode(REF_MODEL, 10.0, 1000.0, 2))


class TestResponseContainer:
    def test_grid_must_increase(self):
        freq = np.array([10.0, 10.0, 20.0])
        resp = transfer_function_eval(REF_MODEL, 2 * np.pi * freq)
        with pytest.raises(ValueError, match="increasing"):
            FrequencyResponse(frequency_hz=freq, response=resp, model=REF_MODEL)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError, match="match"):
            FrequencyResponse(
                frequency_hz=np.array([1.0, 2.0, 3.0]),
                response=np.zeros(2, dtype=complex),
                model=REF_MODEL,
            )
