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

"""Rule catalogue - node kinds, edge classes and rule signatures.

The catalogue itself lives in ``rules.yaml`` and is loaded lazily on first
use. Python keeps the enumerations and the lookup helpers.

Example:
    from proofgraph.rules import NodeKind, get_catalogue

    rule = get_catalogue().rule_for(NodeKind.REC)
    assert rule.arity == 4
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, FrozenSet, Optional, Tuple

import yaml

from proofgraph.errors import UnknownRule

logger = logging.getLogger(__name__)

# =============================================================================
# YAML Configuration Path
# =============================================================================
_YAML_CONFIG_PATH = Path(__file__).parent / "rules.yaml"


class NodeKind(str, Enum):
    """Kind tag of a hypergraph node."""

    SORT = "Sort"
    NAT = "Nat"
    ZERO = "NatZero"
    SUCC = "NatSucc"
    VAR = "Var"
    LAMBDA = "Lambda"
    APP = "App"
    PI = "PiForm"
    SIGMA = "SigmaForm"
    PAIR = "Pair"
    PROJ1 = "Proj1"
    PROJ2 = "Proj2"
    ID = "IdForm"
    REFL = "Refl"
    CONG = "Cong"
    REC = "Rec"
    DEFREF = "DefRef"
    AND = "PropAnd"
    IMPLIES = "PropImplies"
    NOT = "PropNot"
    ATOM = "Atom"
    AXIOM = "Axiom"


class EdgeClass(str, Enum):
    """Class tag of a hyperedge."""

    FORMATION = "Formation"
    INTRODUCTION = "Introduction"
    ELIMINATION = "Elimination"
    COMPUTATION = "Computation"
    DEDUCTION = "Deduction"
    TYPING = "Typing"


# Edge classes that make up the construction relation (kept acyclic).
CONSTRUCTION_CLASSES: FrozenSet[EdgeClass] = frozenset(
    {
        EdgeClass.FORMATION,
        EdgeClass.INTRODUCTION,
        EdgeClass.ELIMINATION,
        EdgeClass.DEDUCTION,
    }
)

# Kinds whose nodes are propositions of the propositional layer.
PROPOSITION_KINDS: FrozenSet[NodeKind] = frozenset(
    {NodeKind.ATOM, NodeKind.AND, NodeKind.IMPLIES, NodeKind.NOT}
)


@dataclass(frozen=True)
class Rule:
    """Signature of one rule color.

    Attributes:
        color: Rule tag carried by the edges it produces
        arity: Number of ordered inputs
        edge_class: Class of the edges it produces
        kind: Node kind built (construction rules only)
        payload: Payload shape, one of "none", "index", "name"
        inputs: Input sorts consulted by the extension operator
        binders: Input positions that sit under one extra binder
    """

    color: str
    arity: int
    edge_class: EdgeClass
    kind: Optional[NodeKind] = None
    payload: str = "none"
    inputs: Tuple[str, ...] = ()
    binders: Tuple[int, ...] = ()

    @property
    def is_construction(self) -> bool:
        return self.kind is not None

    @property
    def is_root_rule(self) -> bool:
        return self.kind is not None and self.arity == 0

    def payload_valid(self, payload: Any) -> bool:
        """Check a payload against this rule's payload shape."""
        if self.payload == "index":
            return isinstance(payload, int) and not isinstance(payload, bool) and payload >= 0
        if self.payload == "name":
            return isinstance(payload, str) and bool(payload)
        return payload is None


class RuleCatalogue:
    """Lookup tables over the rule catalogue."""

    def __init__(self, rules: Dict[str, Rule], sorts: Dict[str, FrozenSet[NodeKind]]):
        self._rules = dict(rules)
        self._sorts = dict(sorts)
        self._by_kind: Dict[NodeKind, Rule] = {
            rule.kind: rule for rule in rules.values() if rule.kind is not None
        }

    @property
    def colors(self) -> Tuple[str, ...]:
        return tuple(sorted(self._rules))

    def has(self, color: str) -> bool:
        return color in self._rules

    def rule(self, color: str) -> Rule:
        try:
            return self._rules[color]
        except KeyError:
            raise UnknownRule(f"unknown rule color {color!r}") from None

    def rule_for(self, kind: NodeKind) -> Rule:
        return self._by_kind[kind]

    def accepts(self, sort: str, kind: NodeKind) -> bool:
        """Whether a node of ``kind`` may fill an input of ``sort``."""
        kinds = self._sorts.get(sort)
        if kinds is None:
            return False
        return not kinds or kind in kinds


def _load_yaml_config() -> RuleCatalogue:
    """Load rules.yaml into a RuleCatalogue."""
    raw = yaml.safe_load(_YAML_CONFIG_PATH.read_text(encoding="utf-8"))

    sorts = {
        name: frozenset(NodeKind(kind) for kind in kinds or [])
        for name, kinds in raw.get("sorts", {}).items()
    }
    rules: Dict[str, Rule] = {}
    for color, spec in raw.get("construction", {}).items():
        rules[color] = Rule(
            color=color,
            arity=int(spec["arity"]),
            edge_class=EdgeClass(spec["class"]),
            kind=NodeKind(spec["kind"]),
            payload=spec.get("payload", "none"),
            inputs=tuple(spec.get("inputs", ())),
            binders=tuple(spec.get("binders", ())),
        )
    for color, spec in raw.get("connective", {}).items():
        rules[color] = Rule(color=color, arity=1, edge_class=EdgeClass(spec["class"]))

    logger.debug(f"Loaded {len(rules)} rules from {_YAML_CONFIG_PATH.name}")
    return RuleCatalogue(rules, sorts)


# Load config lazily
_catalogue: Optional[RuleCatalogue] = None


def get_catalogue() -> RuleCatalogue:
    """Get or load the rule catalogue lazily."""
    global _catalogue
    if _catalogue is None:
        _catalogue = _load_yaml_config()
    return _catalogue


def reset_catalogue() -> None:
    """Drop the cached catalogue.

    Useful for testing.
    """
    global _catalogue
    _catalogue = None


def color_for(kind: NodeKind) -> str:
    """Rule color that constructs ``kind``."""
    return get_catalogue().rule_for(kind).color


__all__ = [
    "NodeKind",
    "EdgeClass",
    "CONSTRUCTION_CLASSES",
    "PROPOSITION_KINDS",
    "Rule",
    "RuleCatalogue",
    "get_catalogue",
    "reset_catalogue",
    "color_for",
]
