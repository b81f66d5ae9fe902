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

"""Run configuration for experiments and the discovery loop.

A RunConfig is stored as a flat ``key=value`` file::

    # proofgraph run
    seed=7
    proof_nodes=2000
    conjecture_free=false

Blank lines and ``#`` comments are ignored. Unknown keys and non-positive
budgets are errors. Named presets scale the search and mining budgets.

Example:
    config = RunConfig.from_preset("quick", seed=3)
    text = config.dumps()
    assert RunConfig.loads(text) == config
"""

from __future__ import annotations

import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Union

from proofgraph.errors import ConfigError

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "PROOFGRAPH_CONFIG"

# =============================================================================
# Defaults
# =============================================================================

_SEARCH_DEFAULTS: Dict[str, Any] = {
    "proof_nodes": 2000,
    "normalize_fuel": 10_000,
    "ground_instances": 10,
    "refute_limit": 16,
}
_MINING_DEFAULTS: Dict[str, Any] = {
    "mine_size": 6,
    "mine_arity": 2,
    "mine_top_k": 5,
}
_LOOP_DEFAULTS: Dict[str, Any] = {
    "seed": 0,
    "novelty_m": 3,
    "interest_floor": 1.0,
    "compress_every": 5,
    "conjectures_per_step": 3,
    "conjecture_free": False,
}
_PATH_DEFAULTS: Dict[str, Any] = {
    "corpus_file": "",
    "log_file": "run.jsonl",
    "out_dir": "out",
}

# Keys that must be strictly positive.
_POSITIVE = (
    "proof_nodes",
    "normalize_fuel",
    "ground_instances",
    "refute_limit",
    "mine_size",
    "mine_top_k",
    "novelty_m",
    "compress_every",
    "conjectures_per_step",
)


# =============================================================================
# Presets
# =============================================================================


@dataclass(frozen=True)
class Preset:
    """A named scaling of the default budgets."""

    name: str
    budget_multiplier: float
    description: str


_PRESETS: Dict[str, Preset] = {
    "quick": Preset("quick", 0.25, "Smoke runs and tests"),
    "standard": Preset("standard", 1.0, "Default experiment budgets"),
    "thorough": Preset("thorough", 4.0, "Long runs with deep proof search"),
}

# Keys scaled by a preset.
_SCALED = ("proof_nodes", "normalize_fuel")


# =============================================================================
# RunConfig
# =============================================================================


def _parse_bool(key: str, text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ConfigError(f"{key} expects true or false, got {text!r}", key, text)


@dataclass(frozen=True)
class RunConfig:
    """Free parameters of a run.

    Attributes:
        seed: Base seed; step t of the loop uses the seed material [seed, t]
        proof_nodes: Node expansions allowed per proof attempt
        normalize_fuel: Reduction steps allowed per normalization
        ground_instances: Largest ground instance tried by inductive generalization
        refute_limit: Largest ground instance tried when refuting
        mine_size: Largest mined pattern, in nodes
        mine_arity: Most holes in a mined pattern
        mine_top_k: Abstractions kept per mining call
        novelty_m: Proof-step threshold below which a theorem is easy
        interest_floor: Least interestingness for admission
        compress_every: Steps between compression rounds
        conjectures_per_step: Conjectures attempted per step
        conjecture_free: Replace conjecturing by one forward layer per step
        corpus_file: Corpus JSON to start from; empty for the seed corpus
        log_file: Run log name inside out_dir
        out_dir: Directory for artifacts
    """

    seed: int = _LOOP_DEFAULTS["seed"]
    proof_nodes: int = _SEARCH_DEFAULTS["proof_nodes"]
    normalize_fuel: int = _SEARCH_DEFAULTS["normalize_fuel"]
    ground_instances: int = _SEARCH_DEFAULTS["ground_instances"]
    refute_limit: int = _SEARCH_DEFAULTS["refute_limit"]
    mine_size: int = _MINING_DEFAULTS["mine_size"]
    mine_arity: int = _MINING_DEFAULTS["mine_arity"]
    mine_top_k: int = _MINING_DEFAULTS["mine_top_k"]
    novelty_m: int = _LOOP_DEFAULTS["novelty_m"]
    interest_floor: float = _LOOP_DEFAULTS["interest_floor"]
    compress_every: int = _LOOP_DEFAULTS["compress_every"]
    conjectures_per_step: int = _LOOP_DEFAULTS["conjectures_per_step"]
    conjecture_free: bool = _LOOP_DEFAULTS["conjecture_free"]
    corpus_file: str = _PATH_DEFAULTS["corpus_file"]
    log_file: str = _PATH_DEFAULTS["log_file"]
    out_dir: str = _PATH_DEFAULTS["out_dir"]

    def __post_init__(self) -> None:
        for key in _POSITIVE:
            value = getattr(self, key)
            if value <= 0:
                raise ConfigError(f"{key} must be positive, got {value}", key, value)
        if self.mine_size < 2:
            raise ConfigError(
                f"mine_size must be at least 2, got {self.mine_size}", "mine_size", self.mine_size
            )
        if self.mine_arity < 0:
            raise ConfigError(
                f"mine_arity must be non-negative, got {self.mine_arity}",
                "mine_arity",
                self.mine_arity,
            )

    # -------------------------------------------------------------------------
    # Construction
    # -------------------------------------------------------------------------

    @classmethod
    def from_preset(cls, name: str, **overrides: Any) -> "RunConfig":
        """Defaults scaled by a named preset, then ``overrides``."""
        preset = _PRESETS.get(name)
        if preset is None:
            raise ConfigError(
                f"unknown preset {name!r}; choose from {sorted(_PRESETS)}", "preset", name
            )
        base = cls()
        scaled = {
            key: max(1, int(getattr(base, key) * preset.budget_multiplier)) for key in _SCALED
        }
        return replace(base, **{**scaled, **overrides})

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        """A copy with the given fields replaced; None values are ignored."""
        given = {k: v for k, v in overrides.items() if v is not None}
        unknown = set(given) - {f.name for f in fields(self)}
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        return replace(self, **given)

    # -------------------------------------------------------------------------
    # key=value files
    # -------------------------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def run_settings(self) -> Dict[str, Any]:
        """Settings that shape a run, without file locations."""
        return {k: v for k, v in asdict(self).items() if k not in _PATH_DEFAULTS}

    def dumps(self) -> str:
        lines = ["# proofgraph run configuration"]
        for f in fields(self):
            value = getattr(self, f.name)
            text = str(value).lower() if isinstance(value, bool) else str(value)
            lines.append(f"{f.name}={text}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "RunConfig":
        """Parse a key=value document; missing keys keep their defaults.

        Raises:
            ConfigError: Malformed line, unknown key, bad value
        """
        types = {f.name: f.type for f in fields(cls)}
        values: Dict[str, Any] = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"line {number}: expected key=value, got {raw!r}")
            key, _, value = (part.strip() for part in line.partition("="))
            if key not in types:
                raise ConfigError(f"line {number}: unknown key {key!r}", key, value)
            values[key] = cls._coerce(key, types[key], value)
        return cls(**values)

    @staticmethod
    def _coerce(key: str, type_name: Any, value: str) -> Any:
        kind = type_name if isinstance(type_name, str) else getattr(type_name, "__name__", "")
        try:
            if kind == "bool":
                return _parse_bool(key, value)
            if kind == "int":
                return int(value)
            if kind == "float":
                return float(value)
        except ValueError as exc:
            raise ConfigError(f"{key} expects {kind}, got {value!r}", key, value) from exc
        return value

    @classmethod
    def load(cls, path: Union[str, Path]) -> "RunConfig":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        config = cls.loads(text)
        logger.info(f"Loaded run configuration from {path}")
        return config

    def dump(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")


def resolve_config_path(cli_path: Optional[str]) -> Optional[str]:
    """``PROOFGRAPH_CONFIG`` wins over the ``--config`` flag."""
    env = os.environ.get(CONFIG_ENV_VAR)
    if env:
        if cli_path and cli_path != env:
            logger.warning(f"{CONFIG_ENV_VAR}={env} overrides --config {cli_path}")
        return env
    return cli_path


def load_run_config(cli_path: Optional[str] = None, preset: str = "standard") -> RunConfig:
    """The configuration a command should use."""
    path = resolve_config_path(cli_path)
    if path:
        return RunConfig.load(path)
    return RunConfig.from_preset(preset)


def available_presets() -> Dict[str, str]:
    return {name: preset.description for name, preset in _PRESETS.items()}


__all__ = [
    "CONFIG_ENV_VAR",
    "Preset",
    "RunConfig",
    "resolve_config_path",
    "load_run_config",
    "available_presets",
]
