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

"""Checked-in golden files.

Set ``PROOFGRAPH_UPDATE_GOLDEN=1`` to (re)record them from the current
code; otherwise a missing file fails the test that needs it.
"""

from __future__ import annotations

import os
from pathlib import Path

import pytest

GOLDEN_DIR = Path(__file__).parent / "golden"
GOLDEN_LOG = GOLDEN_DIR / "discover_seed0.jsonl"
UPDATE_ENV_VAR = "PROOFGRAPH_UPDATE_GOLDEN"


def assert_golden(path: Path, actual: bytes) -> None:
    """Compare ``actual`` with the recorded file byte for byte."""
    if os.environ.get(UPDATE_ENV_VAR) == "1":
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(actual)
    if not path.is_file():
        pytest.fail(
            f"golden file {path.relative_to(GOLDEN_DIR.parent)} is missing; "
            f"record it with {UPDATE_ENV_VAR}=1"
        )
    assert actual == path.read_bytes()
