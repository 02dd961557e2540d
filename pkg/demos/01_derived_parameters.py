"""Walk through the lumped-parameter derivation for the reference device.

Loads the shipped config, derives every model quantity, and prints them with
the intermediate hand checks spelled out so each number can be traced back to
the geometry by eye.
"""

import math
from pathlib import Path

from accelsim.config import load_config
from accelsim.device import (
    damping_coefficient,
    derive_all,
    spring_constant,
    static_capacitance,
    total_mass,
)

CONFIG = Path(__file__).resolve().parent.parent / "configs" / "table2_repro.cfg"


def main():
    config = load_config(CONFIG)
    geom, mat = config.geometry, config.material

    print(f"config: {CONFIG.name}")
    print(f"  proof mass plates : {geom.n_proof_masses} x "
          f"{geom.proof_mass_length * 1e6:.0f} x {geom.proof_mass_width * 1e6:.0f} um")
    print(f"  movable fingers   : {geom.n_movable_fingers} x "
          f"{geom.finger_length * 1e6:.0f} x {geom.finger_breadth * 1e6:.0f} um")
    print(f"  thickness / gap   : {geom.device_thickness * 1e6:.0f} / "
          f"{geom.finger_gap * 1e6:.0f} um")
    print()

    # build the table one row at a time, the long way
    m = total_mass(geom, mat)
    plate_volume = geom.proof_mass_length * geom.proof_mass_width * geom.device_thickness
    plates = geom.n_proof_masses * mat.density * plate_volume
    print(f"mass: {m * 1e9:.5f} ug")
    print(f"  plates contribute {plates * 1e9:.5f} ug, fingers {(m - plates) * 1e9:.5f} ug")

    k_beam = spring_constant(geom, mat)
    print(f"stiffness from the folded-beam formula: {k_beam:.4g} N/m")
    if config.overrides.stiffness is not None:
        print(f"  overridden to {config.overrides.stiffness:.4g} N/m by the config "
          "(measured suspension, see README)")

    c0 = static_capacitance(geom, mat)
    b = damping_coefficient(geom, mat)
    print(f"rest capacitance: {c0 * 1e12:.6f} pF")
    print(f"squeeze-film damping: {b * 1e6:.4f} uN.s/m")
    print()

    derived = derive_all(geom, mat, config.overrides)
    print("derived dynamics:")
    print(f"  f_n   = {derived.f_n:.2f} Hz   (omega_n = {derived.omega_n:.1f} rad/s)")
    print(f"  zeta  = {derived.zeta:.5f}")
    print(f"  S_d   = {derived.sensitivity * 1e9:.5f} nm per (m/s^2)")
    x_1g = derived.sensitivity * config.g_value
    print(f"  1 g deflection at g = {config.g_value:g} m/s^2: {x_1g * 1e6:.5f} um "
          f"({x_1g / geom.finger_gap * 100:.2f}% of the gap)")

    # cross checks that must hold no matter what the inputs were
    assert math.isclose(derived.sensitivity * derived.omega_n**2, 1.0, rel_tol=1e-12)
    assert math.isclose(derived.omega_n, math.sqrt(derived.stiffness / derived.mass),
                        rel_tol=1e-12)
    print("\nidentity checks passed: S_d * omega_n^2 = 1, omega_n = sqrt(K/m)")


if __name__ == "__main__":
    main()
