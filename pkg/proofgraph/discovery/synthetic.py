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

"""Synthetic implication chains for measuring search cost.

A chain of depth D runs P0 -> P1 -> ... -> PD with P0 proven. Every path
atom within distance D of the start has ``branching - 1`` decoy successors,
and every path atom within distance D of the goal has ``branching - 1``
decoy predecessors, so both forward and backward search face a tree of
uniform branching while only the path connects start and goal.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Deque, Dict, List, Optional, Sequence, Tuple

import numpy as np

from proofgraph.discovery.corpus import Corpus
from proofgraph.discovery.search import (
    SearchResult,
    prove_backward,
    prove_bidirectional,
    prove_forward,
)
from proofgraph.hypergraph import NodeId

logger = logging.getLogger(__name__)

SEARCH_MODES = ("forward", "backward", "bidirectional")


@dataclass
class ChainFamily:
    """A generated chain problem."""

    corpus: Corpus
    start: NodeId
    goal: NodeId
    branching: int
    depth: int
    path: List[NodeId] = field(default_factory=list)


def chain_family(branching: int, depth: int) -> ChainFamily:
    """Build the chain problem for ``branching`` b >= 1 and ``depth`` D >= 1.

    Implications along the path are admitted before the decoys that share an
    endpoint with them, so the path is always tried first.

    Raises:
        ValueError: ``branching`` or ``depth`` below 1
    """
    if branching < 1 or depth < 1:
        raise ValueError(f"chain needs branching >= 1 and depth >= 1, got {branching}, {depth}")
    corpus = Corpus()
    terms = corpus.kernel.terms
    labels = itertools.count()
    path = [terms.atom(f"P{i}") for i in range(depth + 1)]
    corpus.admit(path[0], terms.axiom("ax_P0", path[0]))

    def imply(antecedent: NodeId, consequent: NodeId) -> None:
        prop = terms.implies(antecedent, consequent)
        if prop in corpus.proven:
            return
        corpus.admit(prop, terms.axiom(f"ax_{next(labels)}", prop))

    # Forward tree: (atom, distance from start, path index or None)
    queue: Deque[Tuple[NodeId, int, Optional[int]]] = deque([(path[0], 0, 0)])
    decoys = itertools.count()
    while queue:
        atom, distance, index = queue.popleft()
        if distance >= depth:
            continue
        successors: List[Tuple[NodeId, Optional[int]]] = []
        if index is not None:
            successors.append((path[index + 1], index + 1))
        while len(successors) < branching:
            successors.append((terms.atom(f"F{next(decoys)}"), None))
        for successor, successor_index in successors:
            imply(atom, successor)
            queue.append((successor, distance + 1, successor_index))

    # Backward tree, mirrored from the goal
    queue = deque([(path[depth], 0, depth)])
    decoys = itertools.count()
    while queue:
        atom, distance, index = queue.popleft()
        if distance >= depth:
            continue
        predecessors: List[Tuple[NodeId, Optional[int]]] = []
        if index is not None:
            predecessors.append((path[index - 1], index - 1))
        while len(predecessors) < branching:
            predecessors.append((terms.atom(f"B{next(decoys)}"), None))
        for predecessor, predecessor_index in predecessors:
            imply(predecessor, atom)
            queue.append((predecessor, distance + 1, predecessor_index))

    logger.info(
        f"Chain family b={branching} D={depth}: {len(corpus.proven)} facts, "
        f"{len(corpus.graph)} nodes"
    )
    return ChainFamily(corpus, path[0], path[depth], branching, depth, path)


def run_mode(family: ChainFamily, mode: str, budget: int) -> SearchResult:
    provers = {
        "forward": prove_forward,
        "backward": prove_backward,
        "bidirectional": prove_bidirectional,
    }
    if mode not in provers:
        raise ValueError(f"unknown search mode {mode!r}; choose from {SEARCH_MODES}")
    return provers[mode](family.corpus, family.goal, budget)


# =============================================================================
# Scaling experiment
# =============================================================================


@dataclass
class ScalingReport:
    """Expansions per search mode across chain depths.

    Attributes:
        branching: Branching factor of every family
        depths: Chain depths, ascending
        expansions: mode -> expansions at each depth
        found: mode -> whether each search reached the goal
    """

    branching: int
    depths: List[int]
    expansions: Dict[str, List[int]] = field(default_factory=dict)
    found: Dict[str, List[bool]] = field(default_factory=dict)

    def slope(self, mode: str) -> float:
        """Least-squares slope of log(expansions) against depth.

        Unidirectional search tends to log b; bidirectional to half of it.
        """
        counts = self.expansions[mode]
        if len(self.depths) < 2:
            raise ValueError("a slope needs at least two depths")
        logs = np.log(np.maximum(np.asarray(counts, dtype=float), 1.0))
        return float(np.polyfit(np.asarray(self.depths, dtype=float), logs, 1)[0])

    def slopes(self) -> Dict[str, float]:
        return {mode: self.slope(mode) for mode in self.expansions}

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "branching": self.branching,
            "depths": self.depths,
            "expansions": self.expansions,
            "found": self.found,
        }
        if len(self.depths) >= 2:
            data["slopes"] = {mode: round(value, 6) for mode, value in self.slopes().items()}
        return data

    def to_csv(self) -> str:
        modes = list(self.expansions)
        lines = [",".join(["depth"] + modes)]
        for row, depth in enumerate(self.depths):
            lines.append(",".join([str(depth)] + [str(self.expansions[m][row]) for m in modes]))
        return "\n".join(lines) + "\n"


def scaling_experiment(
    branching: int,
    depths: Sequence[int],
    budget: int = 1_000_000,
    modes: Sequence[str] = SEARCH_MODES,
) -> ScalingReport:
    """Search each chain depth in every mode and collect expansion counts."""
    report = ScalingReport(branching, sorted(depths))
    for mode in modes:
        report.expansions[mode] = []
        report.found[mode] = []
    for depth in report.depths:
        family = chain_family(branching, depth)
        for mode in modes:
            result = run_mode(family, mode, budget)
            report.expansions[mode].append(result.stats.nodes_expanded)
            report.found[mode].append(result.found)
            logger.info(
                f"b={branching} D={depth} {mode}: {result.stats.nodes_expanded} expansions"
            )
    return report


__all__ = [
    "SEARCH_MODES",
    "ChainFamily",
    "chain_family",
    "run_mode",
    "ScalingReport",
    "scaling_experiment",
]
