"""
Tests for scenario parsing
"""

import math

import pytest

from app.core.exceptions import ScenarioError
from app.services.scenario import REQUIRED_KEYS, build_scenario, load_scenario, parse_scenario_text
from tests.conftest import SCENARIO_TEXT


class TestParseScenario:
    def test_parses_all_keys(self):
        values = parse_scenario_text(SCENARIO_TEXT)
        assert set(values) == set(REQUIRED_KEYS)
        assert values["eve.D"] == 4.0
        assert values["Psi"] == pytest.approx(math.pi / 3)

    def test_missing_equals_sign(self):
        with pytest.raises(ScenarioError) as excinfo:
            parse_scenario_text("m = 1\nA_r 1e-4\n")
        assert excinfo.value.context["line"] == 2

    def test_unknown_key(self):
        with pytest.raises(ScenarioError) as excinfo:
            parse_scenario_text("m = 1\n\ncarol.D = 3\n", source="room.txt")
        assert excinfo.value.context["line"] == 3
        assert "room.txt:3" in excinfo.value.detail

    def test_duplicate_key(self):
        with pytest.raises(ScenarioError, match="duplicate"):
            parse_scenario_text("m = 1\nm = 2\n")

    @pytest.mark.parametrize("value", ["abc", "inf", "nan"])
    def test_bad_number(self, value):
        with pytest.raises(ScenarioError):
            parse_scenario_text(f"m = {value}\n")

    def test_missing_key_is_named(self):
        values = parse_scenario_text(SCENARIO_TEXT)
        del values["eve.psi"]
        with pytest.raises(ScenarioError) as excinfo:
            build_scenario(values)
        assert excinfo.value.context["key"] == "eve.psi"


class TestLoadScenario:
    def test_channel_from_file(self, scenario_file):
        ch = load_scenario(scenario_file).channel()
        assert ch.H_B == pytest.approx(1e-4 / (4 * math.pi))
        assert 0 < ch.H_E < ch.H_B
        assert not ch.eavesdropper_dominates()

    def test_bob_outside_field_of_view(self, tmp_path):
        path = tmp_path / "dark.txt"
        path.write_text(SCENARIO_TEXT.replace("bob.psi = 0", "bob.psi = 1.2"))
        with pytest.raises(ScenarioError):
            load_scenario(path).channel()

    def test_eve_outside_field_of_view(self, tmp_path):
        path = tmp_path / "blind.txt"
        path.write_text(SCENARIO_TEXT.replace("eve.psi = 0.3", "eve.psi = 1.2"))
        ch = load_scenario(path).channel()
        assert ch.degenerate_eavesdropper

    def test_missing_file(self, tmp_path):
        with pytest.raises(ScenarioError):
            load_scenario(tmp_path / "absent.txt")
