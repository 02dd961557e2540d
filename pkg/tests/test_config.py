"""Configuration-file parsing, validation and round-trip tests."""

import pytest

from accelsim.config import Config, ConfigError, load_config, parse_config, serialize_config
from accelsim.device import G_STANDARD
from conftest import REPRO_CFG, TABLE1_CFG

MINIMAL = """
geometry.proof_mass_length    = 225 um
geometry.proof_mass_width     = 1000 um
geometry.proof_mass_thickness = 25 um
geometry.n_proof_masses       = 2
geometry.n_movable_fingers    = 66
geometry.n_fixed_fingers      = 68
geometry.finger_length        = 250 um
geometry.finger_breadth       = 10 um
geometry.device_thickness     = 25 um
geometry.finger_gap           = 5 um
geometry.beam_length          = 250 um
geometry.beam_width           = 10 um
"""


def with_lines(*extra: str) -> str:
    return MINIMAL + "\n".join(extra) + "\n"


class TestParsing:
    def test_minimal_geometry_with_defaults(self):
        config = parse_config(MINIMAL)
        assert config.geometry.finger_gap == pytest.approx(5e-6, rel=1e-15)
        assert config.geometry.n_movable_fingers == 66
        assert config.material.youngs_modulus == 170e9
        assert config.material.density == 2300.0
        assert config.overrides.stiffness is None
        assert config.g_value == G_STANDARD
        assert config.dt == 1e-7
        assert config.duration == 15e-3
        assert config.n_points == 512
        assert config.spacing == "log"

    def test_overlap_defaults_to_finger_length(self):
        config = parse_config(MINIMAL)
        assert config.geometry.initial_overlap == config.geometry.finger_length

    def test_unit_conversions(self):
        config = parse_config(
            with_lines(
                "geometry.initial_overlap = 0.2 mm",
                "material.youngs_modulus = 170 GPa",
                "material.effective_viscosity = 1.85e-5 Pa_s",
            )
        )
        assert config.geometry.initial_overlap == pytest.approx(2e-4, rel=1e-15)
        assert config.material.youngs_modulus == pytest.approx(170e9, rel=1e-15)

    def test_plain_si_value_needs_no_unit(self):
        config = parse_config(with_lines("geometry.initial_overlap = 0.0002"))
        assert config.geometry.initial_overlap == 0.0002

    def test_comments_and_blank_lines(self):
        text = "# leading comment\n\n" + MINIMAL + "sim.g_value = 10 # trailing comment\n"
        assert parse_config(text).g_value == 10.0

    def test_overrides_and_sections(self):
        config = parse_config(
            with_lines(
                "overrides.stiffness = 10",
                "overrides.sensitivity = 5e-9",
                "sim.duration = 0.02",
                "freq.n_points = 128",
                "freq.spacing = linear",
            )
        )
        assert config.overrides.stiffness == 10.0
        assert config.overrides.sensitivity == 5e-9
        assert config.duration == 0.02
        assert config.n_points == 128
        assert config.spacing == "linear"

    def test_integer_valued_float_token_is_accepted_for_counts(self):
        config = parse_config(MINIMAL.replace("= 66", "= 66.0"))
        assert config.geometry.n_movable_fingers == 66


class TestShippedConfigs:
    def test_reference_reproduction_config(self):
        config = load_config(REPRO_CFG)
        assert config.geometry.finger_length == pytest.approx(250e-6, rel=1e-15)
        assert config.overrides.stiffness == 10.0
        assert config.g_value == 10.0
        assert config.geometry.pad_metal_length == pytest.approx(100e-6, rel=1e-15)

    def test_as_published_dimensions_config(self):
        config = load_config(TABLE1_CFG)
        assert config.geometry.finger_length == pytest.approx(245e-6, rel=1e-15)
        assert config.overrides.stiffness is None
        assert config.g_value == G_STANDARD


class TestErrors:
    def test_empty_file_names_the_first_missing_key(self):
        with pytest.raises(ConfigError, match="geometry.proof_mass_length"):
            parse_config("")

    def test_missing_mid_list_key_is_named(self):
        text = "\n".join(
            line for line in MINIMAL.splitlines() if "n_fixed_fingers" not in line
        )
        with pytest.raises(ConfigError, match="geometry.n_fixed_fingers"):
            parse_config(text)

    def test_unknown_key_with_line_number(self):
        with pytest.raises(ConfigError, match=r"line 14.*geometry\.bogus"):
            parse_config(with_lines("geometry.bogus = 1"))

    def test_unknown_section(self):
        with pytest.raises(ConfigError, match="unknown section"):
            parse_config(with_lines("thermal.conductivity = 1"))

    def test_duplicate_key(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config(with_lines("geometry.finger_gap = 6 um"))

    def test_line_without_assignment(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_config("geometry.finger_gap 5 um\n")

    def test_key_without_section(self):
        with pytest.raises(ConfigError, match="section.key"):
            parse_config("finger_gap = 5 um\n")

    def test_non_numeric_value(self):
        with pytest.raises(ConfigError, match="non-numeric"):
            parse_config(with_lines("sim.g_value = strong"))

    def test_unknown_unit_lists_the_known_ones(self):
        with pytest.raises(ConfigError, match="unknown unit 'nm'"):
            parse_config(MINIMAL.replace("5 um", "5000 nm"))

    def test_wrong_unit_for_key(self):
        with pytest.raises(ConfigError, match="not valid for geometry.finger_gap"):
            parse_config(MINIMAL.replace("= 5 um", "= 5 GPa"))

    def test_unit_on_a_count(self):
        text = MINIMAL.replace("n_proof_masses       = 2", "n_proof_masses       = 2 um")
        with pytest.raises(ConfigError, match="not valid for geometry.n_proof_masses"):
            parse_config(text)

    def test_fractional_count(self):
        with pytest.raises(ConfigError, match="must be an integer"):
            parse_config(MINIMAL.replace("= 66", "= 66.5"))

    def test_negative_length_is_an_invariant_violation(self):
        with pytest.raises(ConfigError, match="invariant violation.*finger_gap"):
            parse_config(MINIMAL.replace("= 5 um", "= -5 um"))

    def test_overlap_longer_than_finger(self):
        with pytest.raises(ConfigError, match="invariant violation.*initial_overlap"):
            parse_config(with_lines("geometry.initial_overlap = 300 um"))

    def test_bad_spacing_choice(self):
        with pytest.raises(ConfigError, match="spacing"):
            parse_config(with_lines("freq.spacing = cubic"))

    def test_bad_frequency_window(self):
        with pytest.raises(ConfigError, match="f_max"):
            parse_config(with_lines("freq.f_min = 100", "freq.f_max = 10"))

    def test_config_error_is_a_value_error(self):
        assert issubclass(ConfigError, ValueError)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_config(tmp_path / "nope.cfg")


class TestRoundTrip:
    @pytest.mark.parametrize("path", [TABLE1_CFG, REPRO_CFG])
    def test_shipped_configs_round_trip(self, path):
        original = load_config(path)
        again = parse_config(serialize_config(original))
        assert again == original

    def test_synthetic_config_round_trips(self):
        config = parse_config(
            with_lines(
                "geometry.initial_overlap = 240 um",
                "geometry.pad_metal_length = 100 um",
                "geometry.pad_metal_width = 1 mm",
                "geometry.pad_metal_thickness = 25 um",
                "overrides.mass = 3.5e-8",
                "overrides.stiffness = 12.5",
                "overrides.sensitivity = 4.4e-9",
                "sim.g_value = 9.81",
                "sim.dt = 2e-7",
                "sim.duration = 0.011",
                "sim.settling_band = 0.05",
                "freq.f_min = 5",
                "freq.f_max = 50000",
                "freq.n_points = 256",
                "freq.spacing = linear",
            )
        )
        text = serialize_config(config)
        assert parse_config(text) == config
        # serialization is idempotent byte-for-byte
        assert serialize_config(parse_config(text)) == text

    def test_serialized_text_is_plain_si(self):
        text = serialize_config(parse_config(MINIMAL))
        assert "um" not in text
        assert "geometry.finger_gap = " in text


class TestConfigInvariants:
    def test_direct_construction_is_validated(self):
        base = parse_config(MINIMAL)
        with pytest.raises(ValueError):
            Config(
                geometry=base.geometry,
                material=base.material,
                overrides=base.overrides,
                dt=-1.0,
            )
