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

"""Term builders and de Bruijn operations over a hypergraph.

Terms are nodes of a :class:`~proofgraph.hypergraph.Hypergraph`. Bound
variables are de Bruijn indices (``Var(0)`` is the innermost binder), so
alpha-equivalent terms share one NodeId. Every operation here is memoized
on NodeIds, which is sound because node content never changes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Optional, Tuple

from proofgraph.hypergraph import Hypergraph, NodeId
from proofgraph.rules import NodeKind, get_catalogue

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TermView:
    """A node materialized as a tree.

    ``Terms.build(view)`` re-adds the tree and returns ``view.node``.
    """

    node: NodeId
    kind: NodeKind
    payload: Any
    children: Tuple["TermView", ...]


@dataclass(frozen=True)
class RecCell:
    """The four inputs of a recursor node."""

    motive: NodeId
    base: NodeId
    step: NodeId
    target: NodeId

    @classmethod
    def of(cls, graph: Hypergraph, node_id: NodeId) -> "RecCell":
        node = graph.node(node_id)
        if node.kind is not NodeKind.REC:
            raise ValueError(f"{node_id} is a {node.kind.value}, not a Rec node")
        return cls(*node.children)


def binder_positions(kind: NodeKind) -> Tuple[int, ...]:
    """Child positions of ``kind`` that sit under one extra binder."""
    return get_catalogue().rule_for(kind).binders


class Terms:
    """Builders and substitution for terms stored in one graph."""

    def __init__(self, graph: Hypergraph):
        self.graph = graph
        self._free: Dict[NodeId, FrozenSet[int]] = {}
        self._shift: Dict[Tuple[NodeId, int, int], NodeId] = {}

    # -------------------------------------------------------------------------
    # Builders
    # -------------------------------------------------------------------------

    def mk(self, kind: NodeKind, *children: NodeId, payload: Any = None) -> NodeId:
        return self.graph.add_node(kind, payload, children)

    def sort(self) -> NodeId:
        return self.mk(NodeKind.SORT)

    def nat(self) -> NodeId:
        return self.mk(NodeKind.NAT)

    def zero(self) -> NodeId:
        return self.mk(NodeKind.ZERO)

    def succ(self, n: NodeId) -> NodeId:
        return self.mk(NodeKind.SUCC, n)

    def numeral(self, value: int) -> NodeId:
        """The successor tower for ``value``."""
        if value < 0:
            raise ValueError(f"numerals are non-negative, got {value}")
        node = self.zero()
        for _ in range(value):
            node = self.succ(node)
        return node

    def var(self, index: int) -> NodeId:
        return self.mk(NodeKind.VAR, payload=index)

    def lam(self, domain: NodeId, body: NodeId) -> NodeId:
        return self.mk(NodeKind.LAMBDA, domain, body)

    def app(self, fn: NodeId, *args: NodeId) -> NodeId:
        """Left-associated application ``fn a1 a2 ...``."""
        node = fn
        for arg in args:
            node = self.mk(NodeKind.APP, node, arg)
        return node

    def pi(self, domain: NodeId, codomain: NodeId) -> NodeId:
        return self.mk(NodeKind.PI, domain, codomain)

    def arrow(self, domain: NodeId, codomain: NodeId) -> NodeId:
        """Non-dependent function type; ``codomain`` lives outside the binder."""
        return self.pi(domain, self.shift(codomain, 1))

    def sigma(self, first: NodeId, second: NodeId) -> NodeId:
        return self.mk(NodeKind.SIGMA, first, second)

    def pair(self, first: NodeId, second: NodeId) -> NodeId:
        return self.mk(NodeKind.PAIR, first, second)

    def proj1(self, pair: NodeId) -> NodeId:
        return self.mk(NodeKind.PROJ1, pair)

    def proj2(self, pair: NodeId) -> NodeId:
        return self.mk(NodeKind.PROJ2, pair)

    def id(self, carrier: NodeId, lhs: NodeId, rhs: NodeId) -> NodeId:
        return self.mk(NodeKind.ID, carrier, lhs, rhs)

    def refl(self, term: NodeId) -> NodeId:
        return self.mk(NodeKind.REFL, term)

    def cong(self, proof: NodeId) -> NodeId:
        return self.mk(NodeKind.CONG, proof)

    def rec(self, motive: NodeId, base: NodeId, step: NodeId, target: NodeId) -> NodeId:
        return self.mk(NodeKind.REC, motive, base, step, target)

    def atom(self, name: str) -> NodeId:
        return self.mk(NodeKind.ATOM, payload=name)

    def conj(self, lhs: NodeId, rhs: NodeId) -> NodeId:
        return self.mk(NodeKind.AND, lhs, rhs)

    def implies(self, lhs: NodeId, rhs: NodeId) -> NodeId:
        return self.mk(NodeKind.IMPLIES, lhs, rhs)

    def neg(self, prop: NodeId) -> NodeId:
        return self.mk(NodeKind.NOT, prop)

    def axiom(self, name: str, prop: NodeId) -> NodeId:
        return self.mk(NodeKind.AXIOM, prop, payload=name)

    # -------------------------------------------------------------------------
    # Inspection
    # -------------------------------------------------------------------------

    def kind(self, node_id: NodeId) -> NodeKind:
        return self.graph.node(node_id).kind

    def children(self, node_id: NodeId) -> Tuple[NodeId, ...]:
        return self.graph.node(node_id).children

    def numeral_value(self, node_id: NodeId) -> Optional[int]:
        """Value of a successor tower, or None for anything else."""
        count = 0
        node = self.graph.node(node_id)
        while node.kind is NodeKind.SUCC:
            count += 1
            node = self.graph.node(node.children[0])
        return count if node.kind is NodeKind.ZERO else None

    def free_vars(self, node_id: NodeId) -> FrozenSet[int]:
        """Indices of free variables, relative to the node's own scope."""
        cached = self._free.get(node_id)
        if cached is not None:
            return cached
        node = self.graph.node(node_id)
        if node.kind is NodeKind.VAR:
            result = frozenset({node.payload})
        elif node.kind is NodeKind.DEFREF:
            result = frozenset()
        else:
            binders = binder_positions(node.kind)
            found = set()
            for position, child in enumerate(node.children):
                inner = self.free_vars(child)
                if position in binders:
                    found.update(i - 1 for i in inner if i > 0)
                else:
                    found.update(inner)
            result = frozenset(found)
        self._free[node_id] = result
        return result

    def is_closed(self, node_id: NodeId) -> bool:
        return not self.free_vars(node_id)

    def view(self, node_id: NodeId) -> TermView:
        """Materialize ``node_id`` as a tree; DefRefs stay leaves."""
        node = self.graph.node(node_id)
        if node.kind is NodeKind.DEFREF:
            return TermView(node.id, node.kind, node.payload, ())
        return TermView(
            node.id, node.kind, node.payload, tuple(self.view(c) for c in node.children)
        )

    def build(self, view: TermView) -> NodeId:
        """Re-add a materialized tree; inverse of :meth:`view`."""
        if view.kind is NodeKind.DEFREF:
            self.graph.node(view.node)
            return view.node
        children = tuple(self.build(child) for child in view.children)
        return self.graph.add_node(view.kind, view.payload, children)

    def size(self, node_id: NodeId) -> int:
        """Number of tree nodes, DefRefs counted once."""
        node = self.graph.node(node_id)
        if node.kind is NodeKind.DEFREF:
            return 1
        return 1 + sum(self.size(child) for child in node.children)

    # -------------------------------------------------------------------------
    # De Bruijn operations
    # -------------------------------------------------------------------------

    def shift(self, node_id: NodeId, amount: int, cutoff: int = 0) -> NodeId:
        """Add ``amount`` to every free index >= ``cutoff``."""
        if amount == 0 or all(i < cutoff for i in self.free_vars(node_id)):
            return node_id
        key = (node_id, amount, cutoff)
        cached = self._shift.get(key)
        if cached is not None:
            return cached
        node = self.graph.node(node_id)
        if node.kind is NodeKind.VAR:
            index = node.payload
            if index + amount < 0:
                raise ValueError(f"shift would make index {index} negative")
            result = self.var(index + amount)
        else:
            binders = binder_positions(node.kind)
            children = tuple(
                self.shift(child, amount, cutoff + (1 if pos in binders else 0))
                for pos, child in enumerate(node.children)
            )
            result = self.graph.add_node(node.kind, node.payload, children)
        self._shift[key] = result
        return result

    def subst(self, node_id: NodeId, index: int, value: NodeId) -> NodeId:
        """Replace free ``Var(index)`` by ``value`` (given in the node's scope)."""
        memo: Dict[Tuple[NodeId, int], NodeId] = {}

        def go(current: NodeId, depth: int) -> NodeId:
            if index + depth not in self.free_vars(current):
                return current
            key = (current, depth)
            if key in memo:
                return memo[key]
            node = self.graph.node(current)
            if node.kind is NodeKind.VAR:
                result = self.shift(value, depth)
            else:
                binders = binder_positions(node.kind)
                children = tuple(
                    go(child, depth + (1 if pos in binders else 0))
                    for pos, child in enumerate(node.children)
                )
                result = self.graph.add_node(node.kind, node.payload, children)
            memo[key] = result
            return result

        return go(node_id, 0)

    def instantiate(self, body: NodeId, value: NodeId) -> NodeId:
        """``body[0 := value]`` for a body sitting under one binder."""
        return self.shift(self.subst(body, 0, self.shift(value, 1)), -1)


__all__ = [
    "TermView",
    "RecCell",
    "Terms",
    "binder_positions",
]
