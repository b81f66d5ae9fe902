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

"""Hash-consed structural hypergraph.

Nodes are terms, types and proofs. A node's identity is derived from its
content (kind, payload, ordered construction inputs), so building the same
term twice yields the same NodeId. Hyperedges are ordered and colored by
the rule that produced them; construction edges form a DAG.

The store is append-only and single-writer. ``snapshot()`` hands out an
immutable copy that may be read from any thread.

Example:
    from proofgraph.hypergraph import Hypergraph
    from proofgraph.rules import NodeKind

    graph = Hypergraph()
    zero = graph.add_node(NodeKind.ZERO)
    one = graph.add_node(NodeKind.SUCC, inputs=(zero,))
    assert graph.add_node(NodeKind.SUCC, inputs=(zero,)) == one
"""

from __future__ import annotations

import hashlib
import itertools
import logging
from collections import deque
from dataclasses import dataclass, replace
from types import MappingProxyType
from typing import (
    Any,
    Callable,
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
)

from proofgraph.errors import (
    ArityMismatch,
    BudgetZero,
    CycleDetected,
    FrozenGraph,
    InvalidPayload,
    UnknownInput,
)
from proofgraph.rules import (
    CONSTRUCTION_CLASSES,
    EdgeClass,
    NodeKind,
    Rule,
    get_catalogue,
)

logger = logging.getLogger(__name__)

NodeId = str
EdgeId = str

Admissible = Callable[[Rule, Tuple[NodeId, ...]], bool]


def _digest(text: str) -> str:
    return hashlib.blake2b(text.encode("utf-8"), digest_size=8).hexdigest()


def node_key(kind: NodeKind, payload: Any, children: Sequence[NodeId]) -> NodeId:
    """Content-derived identifier of a node."""
    return _digest(f"{kind.value}|{payload!r}|{','.join(children)}")


def edge_key(color: str, inputs: Sequence[NodeId], outputs: Sequence[NodeId]) -> EdgeId:
    """Content-derived identifier of a hyperedge."""
    return "e" + _digest(f"{color}|{','.join(inputs)}|{','.join(outputs)}")


@dataclass(frozen=True)
class Node:
    """A vertex of the structural hypergraph.

    Attributes:
        id: Content-derived identifier
        kind: Kind tag
        payload: Variable index, definition or atom name, else None
        children: Ordered construction inputs
        type: Target of the node's primary typing edge, when typed
    """

    id: NodeId
    kind: NodeKind
    payload: Any = None
    children: Tuple[NodeId, ...] = ()
    type: Optional[NodeId] = None


@dataclass(frozen=True)
class HyperEdge:
    """An ordered, colored (p, q) hyperedge."""

    id: EdgeId
    color: str
    edge_class: EdgeClass
    inputs: Tuple[NodeId, ...]
    outputs: Tuple[NodeId, ...]

    @property
    def is_construction(self) -> bool:
        return self.edge_class in CONSTRUCTION_CLASSES


class Hypergraph:
    """Append-only store of nodes and hyperedges with a root set."""

    def __init__(self) -> None:
        self._nodes: Dict[NodeId, Node] = {}
        self._edges: Dict[EdgeId, HyperEdge] = {}
        self._roots: Dict[NodeId, None] = {}
        self._incoming: Dict[NodeId, List[EdgeId]] = {}
        self._outgoing: Dict[NodeId, List[EdgeId]] = {}
        self._revision = 0
        self._frozen = False

    # -------------------------------------------------------------------------
    # Read access
    # -------------------------------------------------------------------------

    @property
    def nodes(self) -> Mapping[NodeId, Node]:
        return MappingProxyType(self._nodes)

    @property
    def edges(self) -> Mapping[EdgeId, HyperEdge]:
        return MappingProxyType(self._edges)

    @property
    def roots(self) -> Tuple[NodeId, ...]:
        return tuple(self._roots)

    @property
    def revision(self) -> int:
        return self._revision

    @property
    def frozen(self) -> bool:
        return self._frozen

    def __contains__(self, node_id: object) -> bool:
        return node_id in self._nodes

    def __len__(self) -> int:
        return len(self._nodes)

    def node(self, node_id: NodeId) -> Node:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise UnknownInput(node_id) from None

    def is_root(self, node_id: NodeId) -> bool:
        return node_id in self._roots

    def incoming(self, node_id: NodeId) -> Tuple[HyperEdge, ...]:
        return tuple(self._edges[e] for e in self._incoming.get(node_id, ()))

    def outgoing(self, node_id: NodeId) -> Tuple[HyperEdge, ...]:
        return tuple(self._edges[e] for e in self._outgoing.get(node_id, ()))

    def construction_edge(self, node_id: NodeId) -> Optional[HyperEdge]:
        """The edge built by the node's own construction rule, if recorded."""
        node = self.node(node_id)
        for edge in self.incoming(node_id):
            if edge.is_construction and edge.inputs == node.children:
                return edge
        return None

    def proofs_of(self, prop: NodeId) -> List[NodeId]:
        """Subjects of typing edges into ``prop``, in insertion order."""
        seen: Dict[NodeId, None] = {}
        for edge in self.incoming(prop):
            if edge.edge_class is EdgeClass.TYPING:
                seen.setdefault(edge.inputs[0], None)
        return list(seen)

    def find(
        self, kind: NodeKind, payload: Any = None, inputs: Sequence[NodeId] = ()
    ) -> Optional[NodeId]:
        """NodeId of an existing node, without adding it."""
        node_id = node_key(kind, payload, inputs)
        return node_id if node_id in self._nodes else None

    # -------------------------------------------------------------------------
    # Construction
    # -------------------------------------------------------------------------

    def _check_writable(self) -> None:
        if self._frozen:
            raise FrozenGraph("snapshots are immutable; take copy() to build on one")

    def add_node(
        self,
        kind: NodeKind,
        payload: Any = None,
        inputs: Sequence[NodeId] = (),
    ) -> NodeId:
        """Add a node built by its kind's construction rule.

        Args:
            kind: Node kind
            payload: Kind-specific payload (index or name)
            inputs: Ordered construction inputs

        Returns:
            The canonical NodeId; an existing id when the node is already present

        Raises:
            ArityMismatch: Input count disagrees with the rule
            UnknownInput: An input is not in the graph
        """
        rule = get_catalogue().rule_for(kind)
        inputs = tuple(inputs)
        if len(inputs) != rule.arity:
            raise ArityMismatch(rule.color, rule.arity, len(inputs))
        if not rule.payload_valid(payload):
            raise InvalidPayload(f"invalid payload {payload!r} for {kind.value}")

        node_id = node_key(kind, payload, inputs)
        if node_id in self._nodes:
            return node_id

        self._check_writable()
        for input_id in inputs:
            if input_id not in self._nodes:
                raise UnknownInput(input_id)

        self._nodes[node_id] = Node(id=node_id, kind=kind, payload=payload, children=inputs)
        if rule.arity == 0:
            self._roots[node_id] = None
        else:
            self._insert_edge(rule.color, rule.edge_class, inputs, (node_id,))
        self._revision += 1
        logger.debug(f"Added {kind.value} node {node_id}")
        return node_id

    def adopt(self, node: Node, as_root: bool = True) -> NodeId:
        """Copy a node record from another graph without its construction.

        Used to seed sub-graphs such as neighborhoods, where the seed stands
        alone as a root.
        """
        self._check_writable()
        if node.id not in self._nodes:
            self._nodes[node.id] = replace(node, type=None)
            if as_root:
                self._roots[node.id] = None
            self._revision += 1
        return node.id

    def add_edge(
        self,
        color: str,
        inputs: Sequence[NodeId],
        outputs: Sequence[NodeId],
    ) -> EdgeId:
        """Add a hyperedge between existing nodes.

        Raises:
            ArityMismatch: Input count disagrees with the rule
            UnknownInput: An endpoint is not in the graph
            CycleDetected: A construction edge would close a cycle or output a root
        """
        rule = get_catalogue().rule(color)
        inputs, outputs = tuple(inputs), tuple(outputs)
        if len(inputs) != rule.arity:
            raise ArityMismatch(color, rule.arity, len(inputs))
        if not outputs:
            raise ArityMismatch(color, 1, 0)
        for node_id in inputs + outputs:
            if node_id not in self._nodes:
                raise UnknownInput(node_id)

        edge_id = edge_key(color, inputs, outputs)
        if edge_id in self._edges:
            return edge_id
        self._check_writable()

        if rule.edge_class in CONSTRUCTION_CLASSES:
            for out in outputs:
                if out in self._roots:
                    raise CycleDetected(f"construction edge {color!r} outputs root {out}")
            ancestors = self.ancestors(inputs)
            for out in outputs:
                if out in ancestors:
                    raise CycleDetected(f"edge {color!r} would make {out} its own ancestor")

        self._insert_edge(color, rule.edge_class, inputs, outputs)
        self._revision += 1
        return edge_id

    def set_type(self, node_id: NodeId, type_id: NodeId, color: str = "type-of") -> EdgeId:
        """Record a typing edge ``node_id -> type_id``.

        The first ``type-of`` edge also becomes the node's primary type.
        """
        edge_id = self.add_edge(color, (node_id,), (type_id,))
        node = self._nodes[node_id]
        if color == "type-of" and node.type is None:
            self._nodes[node_id] = replace(node, type=type_id)
        return edge_id

    def _insert_edge(
        self,
        color: str,
        edge_class: EdgeClass,
        inputs: Tuple[NodeId, ...],
        outputs: Tuple[NodeId, ...],
    ) -> EdgeId:
        edge_id = edge_key(color, inputs, outputs)
        if edge_id in self._edges:
            return edge_id
        self._edges[edge_id] = HyperEdge(edge_id, color, edge_class, inputs, outputs)
        for node_id in dict.fromkeys(inputs):
            self._outgoing.setdefault(node_id, []).append(edge_id)
        for node_id in dict.fromkeys(outputs):
            self._incoming.setdefault(node_id, []).append(edge_id)
        return edge_id

    def _insert_raw(self, node: Node, root: bool) -> None:
        """Insert a node record verbatim (used by import and closure)."""
        self._nodes[node.id] = node
        if root:
            self._roots[node.id] = None

    # -------------------------------------------------------------------------
    # Traversal
    # -------------------------------------------------------------------------

    def ancestors(self, start: Iterable[NodeId]) -> Set[NodeId]:
        """Nodes reachable backwards through construction edges, start included."""
        seen: Set[NodeId] = set()
        stack = list(start)
        while stack:
            node_id = stack.pop()
            if node_id in seen:
                continue
            seen.add(node_id)
            for edge in self.incoming(node_id):
                if edge.is_construction:
                    stack.extend(edge.inputs)
        return seen

    def topological_order(self) -> List[NodeId]:
        """All nodes, construction inputs before outputs."""
        deps: Dict[NodeId, Set[NodeId]] = {node_id: set() for node_id in self._nodes}
        dependents: Dict[NodeId, List[NodeId]] = {node_id: [] for node_id in self._nodes}
        for edge in self._edges.values():
            if not edge.is_construction:
                continue
            for out in edge.outputs:
                for inp in edge.inputs:
                    if inp not in deps[out]:
                        deps[out].add(inp)
                        dependents[inp].append(out)
        remaining = {node_id: len(d) for node_id, d in deps.items()}
        ready = deque(node_id for node_id in self._nodes if remaining[node_id] == 0)
        order: List[NodeId] = []
        while ready:
            node_id = ready.popleft()
            order.append(node_id)
            for out in dependents[node_id]:
                remaining[out] -= 1
                if remaining[out] == 0:
                    ready.append(out)
        if len(order) != len(self._nodes):
            raise CycleDetected("construction relation is not acyclic")
        return order

    # -------------------------------------------------------------------------
    # Snapshots
    # -------------------------------------------------------------------------

    def copy(self) -> "Hypergraph":
        """A mutable copy sharing no containers with this graph."""
        other = Hypergraph()
        other._nodes = dict(self._nodes)
        other._edges = dict(self._edges)
        other._roots = dict(self._roots)
        other._incoming = {k: list(v) for k, v in self._incoming.items()}
        other._outgoing = {k: list(v) for k, v in self._outgoing.items()}
        other._revision = self._revision
        return other

    def snapshot(self) -> "Hypergraph":
        """An immutable copy at the current revision."""
        other = self.copy()
        other._frozen = True
        return other

    def structurally_equal(self, other: "Hypergraph") -> bool:
        """Same nodes, edges and roots, ignoring insertion order."""
        return (
            set(self._nodes.values()) == set(other._nodes.values())
            and set(self._edges.values()) == set(other._edges.values())
            and set(self._roots) == set(other._roots)
        )

    def __repr__(self) -> str:
        return (
            f"Hypergraph(nodes={len(self._nodes)}, edges={len(self._edges)}, "
            f"roots={len(self._roots)}, revision={self._revision})"
        )


# =============================================================================
# Operations
# =============================================================================


def backward_closure(
    graph: Hypergraph,
    node_id: NodeId,
    stop: Optional[Callable[[Node], bool]] = None,
) -> Hypergraph:
    """Minimal sub-hypergraph constructing ``node_id``.

    Args:
        graph: Source graph
        node_id: Node whose construction history is wanted
        stop: Optional predicate; matching nodes (other than ``node_id``) are
            kept as inputs of the closure without expanding their history

    Returns:
        A new graph holding the node, its construction ancestors and the
        connecting construction edges. Nodes without a construction edge in
        the closure are its roots.
    """
    graph.node(node_id)
    order: List[NodeId] = []
    chosen: Dict[NodeId, Optional[HyperEdge]] = {}

    def visit(current: NodeId) -> None:
        stack: List[Tuple[NodeId, bool]] = [(current, False)]
        while stack:
            nid, expanded = stack.pop()
            if expanded:
                order.append(nid)
                continue
            if nid in chosen:
                continue
            edge = None
            if not (stop is not None and nid != node_id and stop(graph.node(nid))):
                edge = graph.construction_edge(nid)
            chosen[nid] = edge
            stack.append((nid, True))
            if edge is not None:
                for inp in reversed(edge.inputs):
                    if inp not in chosen:
                        stack.append((inp, False))

    visit(node_id)

    closure = Hypergraph()
    for nid in order:
        edge = chosen[nid]
        closure._insert_raw(replace(graph.node(nid), type=None), root=edge is None)
    for nid in order:
        edge = chosen[nid]
        if edge is not None:
            closure._insert_edge(edge.color, edge.edge_class, edge.inputs, edge.outputs)
    closure._revision = len(order)
    return closure


def extend(
    graph: Hypergraph,
    rules: Iterable[str],
    budget: int,
    frontier: Optional[Iterable[NodeId]] = None,
    admissible: Optional[Admissible] = None,
) -> Hypergraph:
    """Apply every listed rule once to existing nodes.

    Args:
        graph: Graph to extend (left untouched)
        rules: Construction rule colors to apply
        budget: Maximum number of new nodes (specializations) kept
        frontier: When given, inputs are drawn only from these nodes
        admissible: Extra predicate on (rule, inputs); defaults to the input
            sorts declared in the catalogue

    Returns:
        A new snapshot containing ``graph`` plus the produced nodes. Rules are
        visited in color order and inputs in NodeId order; once ``budget``
        new nodes exist the remaining specializations are dropped.

    Raises:
        BudgetZero: budget is not positive
    """
    if budget <= 0:
        raise BudgetZero(f"specialization budget must be positive, got {budget}")

    catalogue = get_catalogue()
    result = graph.copy()
    pool = sorted(graph.nodes if frontier is None else set(frontier))
    added = 0

    for color in sorted(set(rules)):
        rule = catalogue.rule(color)
        if not rule.is_construction or rule.arity == 0 or rule.payload != "none":
            continue
        sorts = rule.inputs or ("any",) * rule.arity
        candidates = [
            [n for n in pool if catalogue.accepts(sort, graph.node(n).kind)] for sort in sorts
        ]
        for inputs in itertools.product(*candidates):
            if admissible is not None and not admissible(rule, inputs):
                continue
            if node_key(rule.kind, None, inputs) in result:
                continue
            if added >= budget:
                logger.info(f"Extension capped at {budget} specializations")
                result._frozen = True
                return result
            result.add_node(rule.kind, None, inputs)
            added += 1

    logger.debug(f"Extension added {added} nodes")
    result._frozen = True
    return result


def new_nodes(before: Hypergraph, after: Hypergraph) -> List[NodeId]:
    """Nodes of ``after`` missing from ``before``, in insertion order."""
    return [node_id for node_id in after.nodes if node_id not in before]


__all__ = [
    "NodeId",
    "EdgeId",
    "Node",
    "HyperEdge",
    "Hypergraph",
    "node_key",
    "edge_key",
    "backward_closure",
    "extend",
    "new_nodes",
]
