"""Frequency response of the reference device.

Prints a coarse text Bode magnitude plot, the resonance metrics from the fine
grid, and writes the full table to CSV. No plotting libraries involved.
"""

from pathlib import Path

import numpy as np

from accelsim.config import load_config
from accelsim.device import derive_all
from accelsim.dynamics import SecondOrderModel
from accelsim.freqresp import bode, resonance_metrics
from accelsim.output import frequency_table, write_csv

CONFIG = Path(__file__).resolve().parent.parent / "configs" / "table2_repro.cfg"
OUT = Path(__file__).resolve().parent / "out"
BAR_WIDTH = 56  # columns available for the text bars


def main():
    config = load_config(CONFIG)
    derived = derive_all(config.geometry, config.material, config.overrides)
    model = SecondOrderModel.from_derived(derived)

    resp = bode(model, config.f_min, config.f_max, config.n_points, config.spacing)
    metrics = resonance_metrics(resp)

    print(f"grid: {config.n_points} points, {config.f_min:g} Hz to "
          f"{config.f_max:g} Hz, {config.spacing} spacing")
    print(f"DC magnitude        : {metrics.dc_magnitude:.6e} m per (m/s^2)")
    print(f"resonance peak      : {metrics.peak_frequency:.1f} Hz "
          f"(natural frequency {model.f_n:.1f} Hz)")
    print(f"peak magnification  : Q = {metrics.quality_factor:.2f} "
          f"({20 * np.log10(metrics.quality_factor):.1f} dB above DC)")
    print()

    # coarse decade markers plus the peak itself
    marks = [10.0, 100.0, 1000.0, 2000.0, metrics.peak_frequency,
             4000.0, 10000.0, 100000.0]
    db = resp.magnitude_db_rel_dc()
    lo, hi = db.min(), 20 * np.log10(metrics.quality_factor)
    print(f"{'f [Hz]':>10}  {'dB rel DC':>9}")
    for f in marks:
        level = float(np.interp(np.log10(f), np.log10(resp.frequency_hz), db))
        bar = "#" * max(1, round((level - lo) / (hi - lo) * BAR_WIDTH))
        tag = "  <- peak" if f == metrics.peak_frequency else ""
        print(f"{f:10.1f}  {level:9.2f}  {bar}{tag}")

    # sanity: phase runs from ~0 at DC through -90 at f_n toward -180
    phase_at_fn = float(np.interp(model.f_n, resp.frequency_hz, resp.phase_deg))
    print(f"\nphase at f_n: {phase_at_fn:.2f} deg (interpolated from the grid)")

    OUT.mkdir(exist_ok=True)
    path = OUT / "frequency_response.csv"
    write_csv(path, *frequency_table(resp))
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
