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

"""Computation edges: beta, iota, delta and projection reduction.

Reduction is leftmost-outermost and strong (it goes under binders). Every
contraction persists the reduct in the graph and records a Computation
edge from the whole term before the step to the whole term after it, so a
normalization leaves its full history behind as a chain of edges.

Example:
    reducer = Reducer(terms)
    result = reducer.normalize(node, fuel=1000)
    if result.complete:
        print(result.node, result.steps)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from proofgraph.errors import BudgetZero, FuelExhausted
from proofgraph.hypergraph import Node, NodeId
from proofgraph.kernel.terms import Terms
from proofgraph.rules import NodeKind

logger = logging.getLogger(__name__)

# Position of a subterm: child indices from the root.
Path = Tuple[int, ...]


@dataclass(frozen=True)
class NormalizeResult:
    """Outcome of a fuelled normalization.

    Attributes:
        node: Normal form, or the partial reduct when fuel ran out
        steps: Contractions performed
        complete: True when ``node`` is in normal form
    """

    node: NodeId
    steps: int
    complete: bool


class Reducer:
    """Reduction over the terms of one graph."""

    def __init__(self, terms: Terms):
        self.terms = terms
        self.graph = terms.graph
        self._normal: Set[NodeId] = set()
        self._nf: Dict[NodeId, Tuple[NodeId, int]] = {}

    # -------------------------------------------------------------------------
    # Head contraction
    # -------------------------------------------------------------------------

    def head_reduct(self, node_id: NodeId) -> Optional[Tuple[NodeId, str]]:
        """Contract the head redex of ``node_id``.

        Returns:
            (reduct, color) when the head is a redex, else None
        """
        terms = self.terms
        node = self.graph.node(node_id)
        kind = node.kind

        if kind is NodeKind.DEFREF:
            return node.children[0], "delta"

        if kind is NodeKind.APP:
            fn, arg = node.children
            fn_node = self.graph.node(fn)
            if fn_node.kind is NodeKind.LAMBDA:
                return terms.instantiate(fn_node.children[1], arg), "beta"
            return None

        if kind in (NodeKind.PROJ1, NodeKind.PROJ2):
            inner = self.graph.node(node.children[0])
            if inner.kind is NodeKind.PAIR:
                return inner.children[0 if kind is NodeKind.PROJ1 else 1], "proj"
            return None

        if kind is NodeKind.REC:
            motive, base, step, target = node.children
            target_node = self.graph.node(target)
            if target_node.kind is NodeKind.ZERO:
                return base, "iota"
            if target_node.kind is NodeKind.SUCC:
                pred = target_node.children[0]
                recursive = terms.rec(motive, base, step, pred)
                step_node = self.graph.node(step)
                if step_node.kind is NodeKind.LAMBDA:
                    inner = self.graph.node(step_node.children[1])
                    if inner.kind is NodeKind.LAMBDA:
                        # s = λk.λv.b: one step to b[k := pred, v := recursive]
                        partial = terms.instantiate(step_node.children[1], pred)
                        body = self.graph.node(partial).children[1]
                        return terms.instantiate(body, recursive), "iota"
                return terms.app(step, pred, recursive), "iota"
            return None

        return None

    def is_redex(self, node_id: NodeId) -> bool:
        """Whether :meth:`head_reduct` would fire, without building the reduct."""
        node = self.graph.node(node_id)
        kind = node.kind
        if kind is NodeKind.DEFREF:
            return True
        if kind is NodeKind.APP:
            return self.graph.node(node.children[0]).kind is NodeKind.LAMBDA
        if kind in (NodeKind.PROJ1, NodeKind.PROJ2):
            return self.graph.node(node.children[0]).kind is NodeKind.PAIR
        if kind is NodeKind.REC:
            return self.graph.node(node.children[3]).kind in (NodeKind.ZERO, NodeKind.SUCC)
        return False

    # -------------------------------------------------------------------------
    # Redex positions
    # -------------------------------------------------------------------------

    def redexes(self, node_id: NodeId) -> List[Path]:
        """Every redex position, in leftmost-outermost order."""
        found: List[Path] = []

        def walk(current: NodeId, path: Path) -> None:
            if current in self._normal:
                return
            node = self.graph.node(current)
            if self.is_redex(current):
                found.append(path)
            if node.kind is NodeKind.DEFREF:
                return
            for position, child in enumerate(node.children):
                walk(child, path + (position,))

        walk(node_id, ())
        return found

    def leftmost_outermost(self, node_id: NodeId) -> Optional[Path]:
        """Position of the leftmost-outermost redex, or None in normal form."""
        # Successor chains are walked in a loop; a Succ is never a redex.
        chain: List[NodeId] = []
        current = node_id
        while current not in self._normal:
            node = self.graph.node(current)
            if node.kind is not NodeKind.SUCC:
                break
            chain.append(current)
            current = node.children[0]
        inner = self._leftmost_outermost_below(current)
        if inner is not None:
            return (0,) * len(chain) + inner
        self._normal.update(chain)
        return None

    def _leftmost_outermost_below(self, node_id: NodeId) -> Optional[Path]:
        if node_id in self._normal:
            return None
        if self.is_redex(node_id):
            return ()
        node = self.graph.node(node_id)
        if node.kind is not NodeKind.DEFREF:
            for position, child in enumerate(node.children):
                inner = self.leftmost_outermost(child)
                if inner is not None:
                    return (position,) + inner
        self._normal.add(node_id)
        return None

    def contract(self, node_id: NodeId, path: Path) -> Tuple[NodeId, str]:
        """Contract the redex at ``path`` and rebuild the enclosing term.

        Raises:
            ValueError: No redex sits at ``path``
        """
        spine: List[Tuple[Node, int]] = []
        current = node_id
        for position in path:
            node = self.graph.node(current)
            spine.append((node, position))
            current = node.children[position]
        reduct = self.head_reduct(current)
        if reduct is None:
            raise ValueError(f"no redex at the head of {current}")
        rebuilt, color = reduct
        for node, position in reversed(spine):
            children = node.children[:position] + (rebuilt,) + node.children[position + 1 :]
            rebuilt = self.graph.add_node(node.kind, node.payload, children)
        return rebuilt, color

    # -------------------------------------------------------------------------
    # Stepping
    # -------------------------------------------------------------------------

    def _record(self, before: NodeId, after: NodeId, color: str) -> None:
        self.graph.add_edge(color, (before,), (after,))
        logger.debug(f"{color}: {before} -> {after}")

    def reduce_step(self, node_id: NodeId) -> Optional[NodeId]:
        """Contract the head redex, recording its Computation edge.

        Returns:
            The reduct, or None when the head is not a redex
        """
        reduct = self.head_reduct(node_id)
        if reduct is None:
            return None
        after, color = reduct
        self._record(node_id, after, color)
        return after

    def step(self, node_id: NodeId) -> Optional[NodeId]:
        """One leftmost-outermost contraction anywhere in the term."""
        path = self.leftmost_outermost(node_id)
        if path is None:
            return None
        after, color = self.contract(node_id, path)
        self._record(node_id, after, color)
        return after

    def normalize(self, node_id: NodeId, fuel: int) -> NormalizeResult:
        """Reduce to normal form within ``fuel`` contractions.

        Raises:
            BudgetZero: fuel is not positive
        """
        if fuel <= 0:
            raise BudgetZero(f"fuel must be positive, got {fuel}")
        cached = self._nf.get(node_id)
        if cached is not None and cached[1] <= fuel:
            return NormalizeResult(cached[0], cached[1], True)

        current = node_id
        steps = 0
        trail = [node_id]
        while True:
            path = self.leftmost_outermost(current)
            if path is None:
                break
            if steps >= fuel:
                logger.debug(f"Fuel {fuel} exhausted normalizing {node_id}")
                return NormalizeResult(current, steps, False)
            after, color = self.contract(current, path)
            self._record(current, after, color)
            current = after
            steps += 1
            trail.append(current)

        # Every term on the trail shares the normal form.
        for index, term in enumerate(trail):
            self._nf.setdefault(term, (current, steps - index))
        return NormalizeResult(current, steps, True)

    def normal_form(self, node_id: NodeId, fuel: int) -> NodeId:
        """Like :meth:`normalize` but raises when fuel runs out.

        Raises:
            FuelExhausted: carrying the partial reduct
        """
        result = self.normalize(node_id, fuel)
        if not result.complete:
            raise FuelExhausted(result.node, result.steps)
        return result.node


__all__ = [
    "Path",
    "NormalizeResult",
    "Reducer",
]
