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

"""Tactic priority learning for backward proof search.

Counts attempts and successes per tactic and reorders tactics by success
rate. There are no trained models; the ordering is a pure function of the
counts, so a run stays deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

# Default order tried by backward search before any statistics exist.
DEFAULT_TACTICS: Tuple[str, ...] = (
    "known",
    "assumption",
    "refl",
    "and-intro",
    "intro",
    "mp",
    "cong",
    "induction",
)


@dataclass
class TacticPriorities:
    """Success statistics per backward-search tactic.

    Attributes:
        attempts: Times each tactic was tried on a goal
        successes: Times each tactic closed its goal
    """

    attempts: Dict[str, int] = field(default_factory=dict)
    successes: Dict[str, int] = field(default_factory=dict)
    tactics: Tuple[str, ...] = DEFAULT_TACTICS

    def record(self, tactic: str, success: bool) -> None:
        """Count one attempt of ``tactic``."""
        self.attempts[tactic] = self.attempts.get(tactic, 0) + 1
        if success:
            self.successes[tactic] = self.successes.get(tactic, 0) + 1

    def rate(self, tactic: str) -> float:
        """Laplace-smoothed success rate."""
        return (self.successes.get(tactic, 0) + 1) / (self.attempts.get(tactic, 0) + 2)

    def ordered(self) -> List[str]:
        """Tactics by descending success rate, default order breaking ties.

        ``known`` always stays first.
        """
        rest = [t for t in self.tactics if t != "known"]
        index = {t: i for i, t in enumerate(rest)}
        rest.sort(key=lambda t: (-self.rate(t), index[t]))
        return ["known"] + rest if "known" in self.tactics else rest

    def to_dict(self) -> Dict[str, Dict[str, int]]:
        return {
            "attempts": dict(sorted(self.attempts.items())),
            "successes": dict(sorted(self.successes.items())),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Dict[str, int]]) -> "TacticPriorities":
        return cls(
            attempts=dict(data.get("attempts", {})),
            successes=dict(data.get("successes", {})),
        )

    def __repr__(self) -> str:
        return f"TacticPriorities(order={self.ordered()})"


__all__ = [
    "DEFAULT_TACTICS",
    "TacticPriorities",
]
