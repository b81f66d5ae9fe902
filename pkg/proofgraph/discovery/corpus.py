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

"""The discovery agent's knowledge state.

A corpus is a kernel (and its graph) plus what the agent keeps about it:

- proven: proposition -> first admitted proof, each passing check_proof
- terms: exhibited constructions, the program corpus that compression
  rewrites
- tombstones: nodes no longer referenced after a rewrite (never erased)
- provenance: round, utility and occurrences of adopted abstractions
- conjectures: every proposed statement and its status
- log: append-only events, one JSON object per line on disk
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from proofgraph.discovery.learning import TacticPriorities
from proofgraph.errors import LoadError, MalformedLog
from proofgraph.hypergraph import Hypergraph, NodeId
from proofgraph.kernel.checker import CheckResult, Kernel
from proofgraph.kernel.library import (
    add_succ_proof,
    add_succ_statement,
    define_arithmetic,
)
from proofgraph.serialization import graph_from_dict, graph_to_dict

if TYPE_CHECKING:
    from proofgraph.discovery.conjectures import Conjecture

logger = logging.getLogger(__name__)


# =============================================================================
# Events
# =============================================================================


@dataclass(frozen=True)
class Event:
    """One log entry.

    Attributes:
        t: Loop step (0 for setup)
        phase: conjecture | prove | compress | curate | setup | ...
        action: What happened within the phase
        node_ids: Nodes the event is about
        stats: Numbers and short strings backing the event
        seed_state: Seed material in force, when randomness was used
    """

    t: int
    phase: str
    action: str
    node_ids: Tuple[str, ...] = ()
    stats: Dict[str, Any] = field(default_factory=dict)
    seed_state: Optional[List[int]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "phase": self.phase,
            "action": self.action,
            "nodeIds": list(self.node_ids),
            "stats": self.stats,
            "seedState": self.seed_state,
        }

    def to_line(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Event":
        try:
            return cls(
                t=int(data["t"]),
                phase=str(data["phase"]),
                action=str(data["action"]),
                node_ids=tuple(data.get("nodeIds", ())),
                stats=dict(data.get("stats") or {}),
                seed_state=data.get("seedState"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedLog(f"bad event {data!r}: {exc}") from exc


def parse_log(text: str) -> List[Event]:
    """Events from JSON-lines text; blank lines are skipped.

    Raises:
        MalformedLog: a line is not a JSON event object
    """
    events: List[Event] = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedLog(f"line {number}: {exc}") from exc
        if not isinstance(data, dict):
            raise MalformedLog(f"line {number}: expected an object")
        events.append(Event.from_dict(data))
    return events


def format_log(events: Iterable[Event]) -> str:
    return "".join(event.to_line() + "\n" for event in events)


# =============================================================================
# Corpus
# =============================================================================


class Corpus:
    """Graph, definitions, proven facts, exhibited terms and event log.

    Example:
        corpus = seed_corpus()
        corpus.admit(prop, proof)
        corpus.record("prove", "proved", (prop, proof))
    """

    def __init__(self, kernel: Optional[Kernel] = None):
        self.kernel = kernel if kernel is not None else Kernel()
        self.proven: Dict[NodeId, NodeId] = {}
        self.terms: Dict[str, NodeId] = {}
        self.tombstones: Set[NodeId] = set()
        self.provenance: Dict[str, Dict[str, Any]] = {}
        self.priorities = TacticPriorities()
        self.conjectures: Dict[NodeId, "Conjecture"] = {}
        self.log: List[Event] = []
        self.t = 0

    @property
    def graph(self) -> Hypergraph:
        return self.kernel.graph

    @property
    def definitions(self) -> Dict[str, NodeId]:
        return self.kernel.definitions

    def __len__(self) -> int:
        return len(self.graph)

    # -------------------------------------------------------------------------
    # Knowledge
    # -------------------------------------------------------------------------

    def exhibit(self, name: str, node_id: NodeId) -> None:
        """Keep ``node_id`` as an example construction under ``name``."""
        self.graph.node(node_id)
        self.terms[name] = node_id
        logger.debug(f"Exhibited {name} = {node_id}")

    def is_proven(self, prop: NodeId) -> bool:
        return prop in self.proven

    def admit(self, prop: NodeId, proof: NodeId) -> CheckResult:
        """Check ``proof : prop`` and keep it when valid.

        The first admitted proof of a proposition is the one kept.
        """
        result = self.kernel.check_proof(proof, prop)
        if result.valid:
            self.proven.setdefault(prop, proof)
        else:
            logger.warning(f"Rejected proof {proof} of {prop}: {result.failure}")
        return result

    def facts(self) -> List[Tuple[NodeId, NodeId]]:
        """(proposition, proof) pairs in admission order."""
        return list(self.proven.items())

    def live_nodes(self) -> Set[NodeId]:
        """Nodes referenced by a term, definition, proven fact or root."""
        starts: List[NodeId] = list(self.terms.values())
        starts += list(self.definitions.values())
        for prop, proof in self.proven.items():
            starts += [prop, proof]
        return self.graph.ancestors(starts) | set(self.graph.roots)

    def replay(self) -> List[NodeId]:
        """Propositions whose kept proof no longer checks."""
        failing = []
        for prop, proof in self.proven.items():
            if prop not in self.graph or proof not in self.graph:
                failing.append(prop)
            elif not self.kernel.check_proof(proof, prop).valid:
                failing.append(prop)
        return failing

    # -------------------------------------------------------------------------
    # Log
    # -------------------------------------------------------------------------

    def record(
        self,
        phase: str,
        action: str,
        node_ids: Sequence[str] = (),
        stats: Optional[Dict[str, Any]] = None,
        seed_state: Optional[List[int]] = None,
    ) -> Event:
        event = Event(self.t, phase, action, tuple(node_ids), dict(stats or {}), seed_state)
        self.log.append(event)
        logger.debug(f"[t={self.t}] {phase}/{action} {list(node_ids)}")
        return event

    def log_text(self) -> str:
        return format_log(self.log)

    # -------------------------------------------------------------------------
    # Persistence
    # -------------------------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        """Graph JSON plus definitions, proven pairs, terms and tombstones."""
        data = graph_to_dict(self.graph)
        data["definitions"] = {
            name: {"node": ref, "provenance": self.provenance.get(name)}
            for name, ref in sorted(self.definitions.items())
        }
        data["proven"] = [[prop, proof] for prop, proof in self.proven.items()]
        data["terms"] = dict(self.terms)
        data["tombstones"] = sorted(self.tombstones)
        data["tactics"] = self.priorities.to_dict()
        data["conjectures"] = [c.to_dict() for c in self.conjectures.values()]
        return data

    def dumps(self) -> bytes:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True).encode("utf-8")

    @classmethod
    def from_dict(cls, data: Dict[str, Any], fuel: Optional[int] = None) -> "Corpus":
        """Rebuild a corpus and re-check every proven pair.

        Raises:
            LoadError: malformed document, or a proven pair that fails to check
        """
        from proofgraph.discovery.conjectures import Conjecture

        graph = graph_from_dict(data)
        kernel = Kernel(graph) if fuel is None else Kernel(graph, fuel)
        corpus = cls(kernel)
        try:
            for name, entry in data.get("definitions", {}).items():
                if kernel.definitions.get(name) != entry["node"]:
                    raise LoadError(f"definition {name!r} does not match its DefRef node")
                if entry.get("provenance") is not None:
                    corpus.provenance[name] = dict(entry["provenance"])
            for name, node_id in data.get("terms", {}).items():
                corpus.exhibit(name, node_id)
            corpus.tombstones = set(data.get("tombstones", ()))
            corpus.priorities = TacticPriorities.from_dict(data.get("tactics", {}))
            for entry in data.get("conjectures", ()):
                conjecture = Conjecture.from_dict(entry)
                corpus.conjectures[conjecture.proposition] = conjecture
            pairs = [(str(p), str(q)) for p, q in data.get("proven", ())]
        except (KeyError, TypeError, ValueError) as exc:
            raise LoadError(f"malformed corpus document: {exc}") from exc

        for prop, proof in pairs:
            if prop not in graph or proof not in graph:
                raise LoadError(f"proven pair ({prop}, {proof}) references unknown nodes")
            if not corpus.admit(prop, proof).valid:
                raise LoadError(f"proof {proof} of {prop} does not check")
        return corpus

    @classmethod
    def loads(cls, blob: bytes, fuel: Optional[int] = None) -> "Corpus":
        try:
            data = json.loads(blob.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise LoadError(f"corpus is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise LoadError("corpus document must be an object")
        return cls.from_dict(data, fuel)

    def __repr__(self) -> str:
        return (
            f"Corpus(nodes={len(self.graph)}, definitions={len(self.definitions)}, "
            f"proven={len(self.proven)}, terms={len(self.terms)}, t={self.t})"
        )


# =============================================================================
# Seed
# =============================================================================

# Evaluations kept as examples: (name, definition, arguments).
SEED_EVALUATIONS: Tuple[Tuple[str, str, Tuple[int, ...]], ...] = (
    ("add_2_2", "add", (2, 2)),
    ("double_3", "double", (3,)),
    ("add_4_6", "add", (4, 6)),
    ("double_6", "double", (6,)),
)


def seed_corpus(kernel: Optional[Kernel] = None) -> Corpus:
    """The Peano prelude.

    - definitions add, double and mult
    - evaluations add 2 2, double 3, add 4 6 and double 6 with their values
    - the definitional fact a + S b = S(a + b), proven by refl
    - atoms P and Q with axioms for P and P -> Q
    """
    corpus = Corpus(kernel)
    k = corpus.kernel
    t = k.terms
    defs = define_arithmetic(k)

    for name, fn, args in SEED_EVALUATIONS:
        call = t.app(defs[fn], *(t.numeral(a) for a in args))
        value = k.normalize(call).node
        corpus.exhibit(name, call)
        corpus.exhibit(str(t.numeral_value(value)), value)

    add = defs["add"]
    prop = add_succ_statement(k, add)
    corpus.admit(prop, add_succ_proof(k, add))

    p, q = t.atom("P"), t.atom("Q")
    corpus.admit(p, t.axiom("ax_P", p))
    p_implies_q = t.implies(p, q)
    corpus.admit(p_implies_q, t.axiom("ax_PQ", p_implies_q))

    corpus.record(
        "setup",
        "seed",
        sorted(corpus.proven),
        {"definitions": len(defs), "terms": len(corpus.terms), "proven": len(corpus.proven)},
    )
    logger.info(f"Seed corpus: {corpus!r}")
    return corpus


__all__ = [
    "Event",
    "parse_log",
    "format_log",
    "Corpus",
    "SEED_EVALUATIONS",
    "seed_corpus",
]
