from pathlib import Path

import pytest

from accelsim.device import DeviceGeometry, MaterialProps

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"
TABLE1_CFG = CONFIG_DIR / "table1.cfg"
REPRO_CFG = CONFIG_DIR / "table2_repro.cfg"
TARGETS_FILE = CONFIG_DIR / "table2_targets.csv"


def reference_geometry(**changes) -> DeviceGeometry:
    """Geometry of the reference device (full 250 um finger overlap)."""
    base = dict(
        proof_mass_length=225e-6,
        proof_mass_width=1000e-6,
        proof_mass_thickness=25e-6,
        n_proof_masses=2,
        n_movable_fingers=66,
        n_fixed_fingers=68,
        finger_length=250e-6,
        finger_breadth=10e-6,
        device_thickness=25e-6,
        finger_gap=5e-6,
        beam_length=250e-6,
        beam_width=10e-6,
    )
    base.update(changes)
    return DeviceGeometry(**base)


@pytest.fixture
def ref_geometry() -> DeviceGeometry:
    return reference_geometry()


@pytest.fixture
def ref_material() -> MaterialProps:
    return MaterialProps()
