# Copyright 2025 Vijaykumar Singh <singhvjd@gmail.com>
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Unit tests for run configuration."""

from __future__ import annotations

import pytest

from proofgraph.config import (
    CONFIG_ENV_VAR,
    RunConfig,
    available_presets,
    load_run_config,
    resolve_config_path,
)
from proofgraph.errors import EXIT_USAGE, ConfigError


class TestRunConfigFile:
    """Tests for the flat key=value format."""

    def test_round_trip_defaults(self):
        """Every field survives dumps then loads."""
        config = RunConfig()
        assert RunConfig.loads(config.dumps()) == config

    def test_round_trip_changed_fields(self, tmp_path):
        """Non-default values of every type survive a file round trip."""
        config = RunConfig(
            seed=7,
            proof_nodes=123,
            interest_floor=0.25,
            conjecture_free=True,
            corpus_file="seed.json",
            out_dir="runs/a",
        )
        path = tmp_path / "run.cfg"
        config.dump(path)
        assert RunConfig.load(path) == config

    def test_comments_and_blank_lines(self):
        """Comments and blank lines are skipped; missing keys keep defaults."""
        config = RunConfig.loads("# header\n\nseed = 3\n   # indented comment\n")
        assert config.seed == 3
        assert config.proof_nodes == RunConfig().proof_nodes

    def test_boolean_spellings(self):
        """true/false style words parse as booleans."""
        assert RunConfig.loads("conjecture_free=yes").conjecture_free is True
        assert RunConfig.loads("conjecture_free=off").conjecture_free is False

    def test_unknown_key(self):
        """An unknown key is an error naming the key."""
        with pytest.raises(ConfigError) as info:
            RunConfig.loads("seed=1\nbogus=2\n")
        assert info.value.key == "bogus"
        assert info.value.exit_code == EXIT_USAGE

    def test_malformed_line(self):
        """A line without '=' is rejected."""
        with pytest.raises(ConfigError):
            RunConfig.loads("seed 1")

    def test_bad_value(self):
        """A value of the wrong type is rejected."""
        with pytest.raises(ConfigError) as info:
            RunConfig.loads("proof_nodes=many")
        assert info.value.key == "proof_nodes"

    @pytest.mark.parametrize("key", ["proof_nodes", "normalize_fuel", "compress_every"])
    def test_non_positive_budget(self, key):
        """Budgets must be strictly positive."""
        with pytest.raises(ConfigError) as info:
            RunConfig.loads(f"{key}=0")
        assert info.value.key == key

    def test_missing_file(self, tmp_path):
        """Reading a missing file is a ConfigError."""
        with pytest.raises(ConfigError):
            RunConfig.load(tmp_path / "absent.cfg")


class TestPresets:
    """Tests for named presets and overrides."""

    def test_quick_scales_budgets(self):
        """The quick preset quarters the proof and fuel budgets."""
        config = RunConfig.from_preset("quick")
        assert config.proof_nodes == 500
        assert config.normalize_fuel == 2500
        assert config.mine_size == RunConfig().mine_size

    def test_standard_is_default(self):
        """The standard preset equals the defaults."""
        assert RunConfig.from_preset("standard") == RunConfig()

    def test_preset_overrides(self):
        """Explicit overrides win over the preset."""
        assert RunConfig.from_preset("thorough", proof_nodes=9).proof_nodes == 9

    def test_unknown_preset(self):
        """Unknown preset names are rejected."""
        with pytest.raises(ConfigError):
            RunConfig.from_preset("extreme")

    def test_available_presets(self):
        """All three presets are listed with descriptions."""
        assert set(available_presets()) == {"quick", "standard", "thorough"}

    def test_with_overrides_ignores_none(self):
        """None means keep the current value."""
        config = RunConfig().with_overrides(seed=None, out_dir="x")
        assert config.seed == RunConfig().seed
        assert config.out_dir == "x"

    def test_with_overrides_unknown_key(self):
        """Overriding an unknown field is an error."""
        with pytest.raises(ConfigError):
            RunConfig().with_overrides(colour="blue")


class TestConfigPath:
    """Tests for resolving the configuration path."""

    def test_flag_used_without_env(self, monkeypatch):
        """Without the variable the --config path is used."""
        monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
        assert resolve_config_path("a.cfg") == "a.cfg"
        assert resolve_config_path(None) is None

    def test_env_overrides_flag(self, monkeypatch, tmp_path):
        """The environment variable wins over --config."""
        env_file = tmp_path / "env.cfg"
        RunConfig(seed=11).dump(env_file)
        flag_file = tmp_path / "flag.cfg"
        RunConfig(seed=22).dump(flag_file)
        monkeypatch.setenv(CONFIG_ENV_VAR, str(env_file))
        assert load_run_config(str(flag_file)).seed == 11

    def test_preset_without_any_file(self, monkeypatch):
        """With no path at all the preset is used."""
        monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
        assert load_run_config(None, "quick").proof_nodes == 500
