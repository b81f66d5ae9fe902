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

"""Quantitative measures over a proof hypergraph.

- depth: minimal number of extension layers producing a node
- complexity: summed edge and input costs of a sub-hypergraph
- min_complexity: cheapest recorded derivation of a node
- length: token count of the shortest recorded expression for a node
- efficiency: proof statement-length sum over statement length
- growth_experiment: layer sizes of conjunction-only extension
- hub_scores: degrees and sampled betweenness

All measures are pure functions of the graph they are given, except that
efficiency types sub-proofs through the kernel, which may record typing
edges.
"""

from __future__ import annotations

import csv
import heapq
import io
import logging
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from proofgraph.errors import (
    BudgetZero,
    GuardExceeded,
    Unproven,
    Unreachable,
    ZeroLength,
)
from proofgraph.hypergraph import HyperEdge, Hypergraph, Node, NodeId, extend, new_nodes
from proofgraph.kernel.checker import Context, Kernel
from proofgraph.kernel.syntax import token_shape
from proofgraph.kernel.terms import binder_positions
from proofgraph.rules import EdgeClass, NodeKind, PROPOSITION_KINDS

logger = logging.getLogger(__name__)

# =============================================================================
# Defaults
# =============================================================================
DEFAULT_SEARCH_BUDGET = 50_000
DEFAULT_LENGTH_PASSES = 64
DEFAULT_EXTENSION_BUDGET = 100_000
GROWTH_GUARD = 4

# Rules used by neighborhoods unless told otherwise.
PROPOSITIONAL_RULES = ("and-form", "implies-form", "not-form")


def _unit_edge(edge: HyperEdge) -> float:
    return 1.0


def _free_input(node: Node) -> float:
    return 0.0


@dataclass(frozen=True)
class CostModel:
    """Edge and input costs for complexity measures.

    The default is the unit model: every edge costs 1, inputs are free.
    """

    edge_cost: Callable[[HyperEdge], float] = _unit_edge
    input_cost: Callable[[Node], float] = _free_input

    def scaled(self, factor: float) -> "CostModel":
        """Every cost multiplied by ``factor``."""
        if factor <= 0:
            raise ValueError(f"scale factor must be positive, got {factor}")
        edge, inputs = self.edge_cost, self.input_cost
        return CostModel(
            edge_cost=lambda e: factor * edge(e),
            input_cost=lambda n: factor * inputs(n),
        )


UNIT = CostModel()


@dataclass
class ComplexityReport:
    """A minimized measure with its witness.

    Attributes:
        node: Measured node
        value: Measure under the report's model
        witness: Sub-hypergraph realizing ``value``
        exact: False when a budget cut the search short
    """

    node: NodeId
    value: float
    witness: Hypergraph
    exact: bool
    explored: int = 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "node": self.node,
            "value": self.value,
            "exact": self.exact,
            "witness_edges": len(self.witness.edges),
            "explored": self.explored,
        }


@dataclass
class EfficiencyReport:
    """Quotient of a proof measure by the statement's length."""

    prop: NodeId
    value: float
    numerator: float
    denominator: float
    proof: NodeId
    exact: bool
    statements: List[int] = field(default_factory=list)


def _derivation_edges(graph: Hypergraph, node_id: NodeId) -> List[HyperEdge]:
    """Non-typing edges into ``node_id``; construction first, then by color and id."""
    edges = [
        e
        for e in graph.incoming(node_id)
        if e.edge_class is not EdgeClass.TYPING and node_id not in e.inputs
    ]
    return sorted(edges, key=lambda e: (not e.is_construction, e.color, e.id))


def _default_leaf(graph: Hypergraph) -> Callable[[Node], bool]:
    return lambda node: graph.is_root(node.id) or node.kind is NodeKind.DEFREF


def _witness(
    graph: Hypergraph, chosen: Dict[NodeId, Optional[HyperEdge]]
) -> Hypergraph:
    witness = Hypergraph()
    for node_id, edge in chosen.items():
        witness._insert_raw(replace(graph.node(node_id), type=None), root=edge is None)
    for edge in chosen.values():
        if edge is not None:
            witness._insert_edge(edge.color, edge.edge_class, edge.inputs, edge.outputs)
    witness._revision = len(chosen)
    return witness


# =============================================================================
# Depth
# =============================================================================


def depths(graph: Hypergraph) -> Dict[NodeId, int]:
    """Layer index of every node reachable from the roots.

    A node built by an edge sits one layer above the deepest of the edge's
    inputs; the minimum is taken over construction and computation edges.
    """
    remaining: Dict[str, int] = {}
    for edge in graph.edges.values():
        if edge.edge_class is not EdgeClass.TYPING:
            remaining[edge.id] = len(set(edge.inputs))

    result: Dict[NodeId, int] = {}
    heap: List[Tuple[int, int, NodeId]] = []
    counter = 0
    for root in graph.roots:
        heapq.heappush(heap, (0, counter, root))
        counter += 1

    while heap:
        layer, _, node_id = heapq.heappop(heap)
        if node_id in result:
            continue
        result[node_id] = layer
        for edge in graph.outgoing(node_id):
            if edge.id not in remaining:
                continue
            remaining[edge.id] -= 1
            if remaining[edge.id] == 0:
                for out in edge.outputs:
                    if out not in result:
                        heapq.heappush(heap, (layer + 1, counter, out))
                        counter += 1
    return result


def depth(graph: Hypergraph, node_id: NodeId) -> int:
    """Minimal number of extension layers producing ``node_id``.

    Raises:
        UnknownInput: node is not in the graph
        Unreachable: no derivation from the roots reaches it
    """
    graph.node(node_id)
    found = depths(graph).get(node_id)
    if found is None:
        raise Unreachable(f"{node_id} is not reachable from the roots")
    return found


# =============================================================================
# Neighborhoods and growth
# =============================================================================


def neighborhood(
    graph: Hypergraph,
    seeds: Union[NodeId, Iterable[NodeId]],
    d: int,
    rules: Sequence[str] = PROPOSITIONAL_RULES,
    budget: int = DEFAULT_EXTENSION_BUDGET,
) -> Hypergraph:
    """Everything producible from ``seeds`` within ``d`` extension steps.

    The seeds stand alone as roots of a fresh graph; with ``d = 0`` the
    result holds the seeds only.

    Raises:
        BudgetZero: budget is not positive
        ValueError: d is negative
    """
    if budget <= 0:
        raise BudgetZero(f"specialization budget must be positive, got {budget}")
    if d < 0:
        raise ValueError(f"neighborhood radius must be non-negative, got {d}")
    seed_ids = [seeds] if isinstance(seeds, str) else list(seeds)

    ball = Hypergraph()
    for seed in seed_ids:
        ball.adopt(graph.node(seed))
    for step in range(d):
        ball = extend(ball, rules, budget).copy()
        logger.debug(f"Neighborhood layer {step + 1}: {len(ball)} nodes")
    return ball.snapshot()


def growth_experiment(k: int, layers: int, override: bool = False) -> List[int]:
    """Layer sizes of conjunction-only extension pairing the newest layer.

    Starting from ``k`` atoms, each layer conjoins every ordered pair of
    the previous layer's nodes, so sizes follow ``n_{j+1} = n_j ** 2``.

    Raises:
        GuardExceeded: layers > 4 without ``override``
        BudgetZero: k < 1
    """
    if k < 1:
        raise BudgetZero(f"need at least one atom, got {k}")
    if layers > GROWTH_GUARD and not override:
        raise GuardExceeded(
            f"{layers} layers grows doubly exponentially; pass override to run it"
        )
    graph = Hypergraph()
    newest = [graph.add_node(NodeKind.ATOM, payload=f"A{i}") for i in range(k)]
    counts = [len(newest)]
    for layer in range(layers):
        bigger = extend(graph, ["and-form"], len(newest) ** 2, frontier=newest)
        newest = new_nodes(graph, bigger)
        graph = bigger
        counts.append(len(newest))
        logger.info(f"Growth layer {layer + 1}: {len(newest)} propositions")
    return counts


# =============================================================================
# Complexity
# =============================================================================


def complexity(subgraph: Hypergraph, model: CostModel = UNIT) -> float:
    """Sum of edge costs plus input (root) costs."""
    total = sum(model.edge_cost(edge) for edge in subgraph.edges.values())
    total += sum(model.input_cost(subgraph.node(root)) for root in subgraph.roots)
    return float(total)


def _acyclic(chosen: Dict[NodeId, Optional[HyperEdge]]) -> bool:
    state: Dict[NodeId, int] = {}
    for start in chosen:
        if start in state:
            continue
        stack: List[Tuple[NodeId, int]] = [(start, 0)]
        state[start] = 1
        while stack:
            node_id, index = stack.pop()
            edge = chosen[node_id]
            inputs = edge.inputs if edge is not None else ()
            if index < len(inputs):
                stack.append((node_id, index + 1))
                nxt = inputs[index]
                mark = state.get(nxt)
                if mark == 1:
                    return False
                if mark is None:
                    state[nxt] = 1
                    stack.append((nxt, 0))
            else:
                state[node_id] = 2
    return True


def min_complexity(
    graph: Hypergraph,
    node_id: NodeId,
    model: CostModel = UNIT,
    budget: int = DEFAULT_SEARCH_BUDGET,
    leaf: Optional[Callable[[Node], bool]] = None,
) -> ComplexityReport:
    """Cheapest recorded derivation of ``node_id``.

    Every needed node is either a leaf (a root or a DefRef, at its input
    cost) or is produced by exactly one of its incoming construction or
    computation edges. Derivations must be acyclic. Ties are broken by the
    sorted edge colors, then the sorted edge ids.

    Args:
        graph: Graph holding the alternatives
        node_id: Target node
        model: Cost model
        budget: Maximum number of partial derivations explored
        leaf: Which nodes may be taken as given

    Raises:
        UnknownInput: node is not in the graph
        BudgetZero: budget is not positive
        Unreachable: an exhaustive search found no derivation
    """
    graph.node(node_id)
    if budget <= 0:
        raise BudgetZero(f"search budget must be positive, got {budget}")
    is_leaf = leaf or _default_leaf(graph)

    options_cache: Dict[NodeId, List[Optional[HyperEdge]]] = {}

    def options(current: NodeId) -> List[Optional[HyperEdge]]:
        found = options_cache.get(current)
        if found is None:
            found = [None] if is_leaf(graph.node(current)) else []
            found.extend(_derivation_edges(graph, current))
            options_cache[current] = found
        return found

    chosen: Dict[NodeId, Optional[HyperEdge]] = {}
    best: List[Tuple[Tuple[float, Tuple[str, ...], Tuple[str, ...]], Dict]] = []
    explored = 0
    truncated = False

    def search(agenda: Tuple[NodeId, ...], cost: float) -> None:
        nonlocal explored, truncated
        if truncated:
            return
        explored += 1
        if explored > budget:
            truncated = True
            return
        if best and cost > best[0][0][0]:
            return
        while agenda and agenda[0] in chosen:
            agenda = agenda[1:]
        if not agenda:
            if not _acyclic(chosen):
                return
            edges = [e for e in chosen.values() if e is not None]
            key = (
                cost,
                tuple(sorted(e.color for e in edges)),
                tuple(sorted(e.id for e in edges)),
            )
            if not best or key < best[0][0]:
                best[:] = [(key, dict(chosen))]
            return
        current, rest = agenda[0], agenda[1:]
        for option in options(current):
            chosen[current] = option
            if option is None:
                search(rest, cost + model.input_cost(graph.node(current)))
            else:
                fresh = tuple(i for i in dict.fromkeys(option.inputs) if i not in chosen)
                search(rest + fresh, cost + model.edge_cost(option))
            del chosen[current]

    search((node_id,), 0.0)

    if not best:
        if truncated:
            logger.warning(f"No derivation of {node_id} within budget {budget}")
            return ComplexityReport(node_id, float("inf"), Hypergraph(), False, explored)
        raise Unreachable(f"no recorded derivation reaches {node_id}")
    key, winner = best[0]
    if truncated:
        logger.warning(f"min_complexity({node_id}) truncated at {budget} candidates")
    return ComplexityReport(node_id, key[0], _witness(graph, winner), not truncated, explored)


# =============================================================================
# Length
# =============================================================================


def _relevant(graph: Hypergraph, node_id: NodeId) -> List[NodeId]:
    """Nodes whose lengths can influence ``node_id``: structure plus reduction sources."""
    seen: Dict[NodeId, None] = {}
    queue = deque([node_id])
    while queue:
        current = queue.popleft()
        if current in seen:
            continue
        seen[current] = None
        node = graph.node(current)
        if node.kind is not NodeKind.DEFREF:
            queue.extend(node.children)
        for edge in graph.incoming(current):
            if edge.edge_class is EdgeClass.COMPUTATION:
                queue.extend(edge.inputs)
    return list(seen)


class LengthTable:
    """Shortest recorded expression lengths, relaxed to a fixpoint.

    A node's length is the token count of its own rendering with children
    replaced by their shortest forms, or the length of any expression that
    reduces to it along a recorded Computation edge, whichever is smaller.
    """

    def __init__(self, graph: Hypergraph, passes: int = DEFAULT_LENGTH_PASSES):
        if passes <= 0:
            raise BudgetZero(f"length passes must be positive, got {passes}")
        self.graph = graph
        self.passes = passes
        self._length: Dict[NodeId, int] = {}
        self._choice: Dict[NodeId, Optional[HyperEdge]] = {}
        self._exact: Dict[NodeId, bool] = {}

    def _structural(self, node_id: NodeId, table: Dict[NodeId, int]) -> int:
        own, positions = token_shape(self.graph, node_id)
        children = self.graph.node(node_id).children
        return own + sum(table[children[p]] for p in positions)

    def _solve(self, node_id: NodeId) -> None:
        nodes = _relevant(self.graph, node_id)
        order = sorted(nodes, key=self._topo_rank(nodes).__getitem__)
        table: Dict[NodeId, int] = {}
        choice: Dict[NodeId, Optional[HyperEdge]] = {}
        for current in order:
            known = self._length.get(current)
            if known is not None:
                table[current] = known
                choice[current] = self._choice[current]
                continue
            table[current] = self._structural(current, table)
            choice[current] = None

        converged = False
        for _ in range(self.passes):
            changed = False
            for current in order:
                if current in self._length:
                    continue
                value = self._structural(current, table)
                pick: Optional[HyperEdge] = None
                for edge in self.graph.incoming(current):
                    if edge.edge_class is EdgeClass.COMPUTATION and edge.inputs[0] in table:
                        candidate = table[edge.inputs[0]]
                        if candidate < value:
                            value, pick = candidate, edge
                if value < table[current]:
                    table[current], choice[current] = value, pick
                    changed = True
            if not changed:
                converged = True
                break

        if not converged:
            logger.warning(f"Length relaxation for {node_id} stopped after {self.passes} passes")
        for current in order:
            if current not in self._length:
                self._length[current] = table[current]
                self._choice[current] = choice[current]
                self._exact[current] = converged

    def _topo_rank(self, nodes: List[NodeId]) -> Dict[NodeId, int]:
        """Children before parents, which makes the first pass exact on trees."""
        rank: Dict[NodeId, int] = {}
        members = set(nodes)

        def visit(start: NodeId) -> None:
            stack: List[Tuple[NodeId, bool]] = [(start, False)]
            while stack:
                current, done = stack.pop()
                if done:
                    rank.setdefault(current, len(rank))
                    continue
                if current in rank:
                    continue
                stack.append((current, True))
                node = self.graph.node(current)
                if node.kind is not NodeKind.DEFREF:
                    for child in node.children:
                        if child in members and child not in rank:
                            stack.append((child, False))

        for node_id in nodes:
            visit(node_id)
        return rank

    def value(self, node_id: NodeId) -> int:
        if node_id not in self._length:
            self.graph.node(node_id)
            self._solve(node_id)
        return self._length[node_id]

    def report(self, node_id: NodeId) -> ComplexityReport:
        value = self.value(node_id)
        chosen: Dict[NodeId, Optional[HyperEdge]] = {}
        stack = [node_id]
        while stack:
            current = stack.pop()
            if current in chosen:
                continue
            edge = self._choice.get(current)
            node = self.graph.node(current)
            if edge is not None:
                chosen[current] = edge
                stack.append(edge.inputs[0])
                continue
            construction = None if node.kind is NodeKind.DEFREF else (
                self.graph.construction_edge(current)
            )
            chosen[current] = construction
            if construction is not None:
                stack.extend(construction.inputs)
        return ComplexityReport(
            node_id, float(value), _witness(self.graph, chosen), self._exact[node_id]
        )


def length(
    graph: Hypergraph, node_id: NodeId, budget: int = DEFAULT_LENGTH_PASSES
) -> ComplexityReport:
    """Length of the shortest recorded expression for ``node_id``.

    Raises:
        UnknownInput: node is not in the graph
    """
    return LengthTable(graph, budget).report(node_id)


# =============================================================================
# Efficiency
# =============================================================================


def is_proposition(kernel: Kernel, type_id: NodeId) -> bool:
    """Whether a (normalized) type is a statement rather than a data type."""
    node = kernel.graph.node(type_id)
    if node.kind in PROPOSITION_KINDS or node.kind is NodeKind.ID:
        return True
    if node.kind in (NodeKind.PI, NodeKind.SIGMA):
        return is_proposition(kernel, node.children[1])
    return False


def statement_lengths(
    kernel: Kernel, proof: NodeId, lengths: Optional[LengthTable] = None
) -> List[int]:
    """Lengths of the statements established along a proof.

    Every sub-term of the proof whose type (in its context) is a
    proposition contributes the length of that type. Data sub-terms such
    as numerals and motives contribute nothing.
    """
    graph = kernel.graph
    lengths = lengths or LengthTable(graph)
    found: List[int] = []
    stack: List[Tuple[NodeId, Context]] = [(proof, ())]
    seen: Set[Tuple[NodeId, Context]] = set()
    while stack:
        current, ctx = stack.pop()
        if (current, ctx) in seen:
            continue
        seen.add((current, ctx))
        node = graph.node(current)
        type_id = kernel.nf(kernel.infer(current, ctx))
        if is_proposition(kernel, type_id):
            found.append(lengths.value(type_id))
        if node.kind in (NodeKind.DEFREF, NodeKind.AXIOM):
            continue
        binders = binder_positions(node.kind)
        for position, child in enumerate(node.children):
            if position in binders:
                stack.append((child, (node.children[0],) + ctx))
            else:
                stack.append((child, ctx))
    return found


def efficiency(
    kernel: Kernel,
    prop: NodeId,
    budget: int = DEFAULT_SEARCH_BUDGET,
    model: Optional[CostModel] = None,
) -> EfficiencyReport:
    """Best proof measure divided by the statement's length.

    By default the numerator is the statement-length sum of the proof; with
    a ``model`` it is the proof's minimal derivation cost instead.
    The minimum is taken over every recorded proof of ``prop``.

    Raises:
        Unproven: prop has no recorded proof
        ZeroLength: prop has no tokens
    """
    graph = kernel.graph
    proofs = graph.proofs_of(prop)
    if not proofs:
        raise Unproven(f"{prop} has no recorded proof")
    lengths = LengthTable(graph)
    denominator = lengths.report(prop)
    if denominator.value <= 0:
        raise ZeroLength(f"{prop} serialized to zero tokens")

    exact = denominator.exact
    best: Optional[Tuple[float, NodeId, List[int]]] = None
    for proof in sorted(proofs):
        if model is None:
            statements = statement_lengths(kernel, proof, lengths)
            value = float(sum(statements))
        else:
            report = min_complexity(graph, proof, model, budget)
            statements = []
            value = report.value
            exact = exact and report.exact
        if best is None or value < best[0]:
            best = (value, proof, statements)
    assert best is not None
    value, proof, statements = best
    return EfficiencyReport(
        prop=prop,
        value=value / denominator.value,
        numerator=value,
        denominator=denominator.value,
        proof=proof,
        exact=exact,
        statements=statements,
    )


# =============================================================================
# Hubs
# =============================================================================


@dataclass(frozen=True)
class HubScore:
    out_degree: int
    in_degree: int
    betweenness: float


def _bipartite(graph: Hypergraph) -> Tuple[List[str], Dict[str, List[str]]]:
    vertices: List[str] = list(graph.nodes) + list(graph.edges)
    successors: Dict[str, List[str]] = {v: [] for v in vertices}
    for edge in graph.edges.values():
        for node_id in dict.fromkeys(edge.inputs):
            successors[node_id].append(edge.id)
        successors[edge.id].extend(dict.fromkeys(edge.outputs))
    return vertices, successors


def hub_scores(
    graph: Hypergraph, samples: Optional[int] = None, seed: int = 0
) -> Dict[NodeId, HubScore]:
    """Degrees and betweenness over the bipartite node/edge expansion.

    Betweenness uses Brandes' accumulation from ``samples`` seeded source
    vertices, scaled by ``vertices / samples``; with ``samples`` None (or
    at least the vertex count) every source is used and the result is
    exact.
    """
    vertices, successors = _bipartite(graph)
    centrality: Dict[str, float] = {v: 0.0 for v in vertices}

    if samples is None or samples >= len(vertices):
        sources = vertices
        scale = 1.0
    else:
        if samples <= 0:
            raise BudgetZero(f"sample count must be positive, got {samples}")
        rng = np.random.default_rng(seed)
        picked = rng.choice(len(vertices), size=samples, replace=False)
        sources = [vertices[i] for i in sorted(picked.tolist())]
        scale = len(vertices) / samples

    for source in sources:
        order: List[str] = []
        preds: Dict[str, List[str]] = {source: []}
        sigma: Dict[str, float] = {source: 1.0}
        dist: Dict[str, int] = {source: 0}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in successors[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    sigma[w] = 0.0
                    preds[w] = []
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta: Dict[str, float] = {v: 0.0 for v in order}
        for w in reversed(order):
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != source:
                centrality[w] += delta[w]

    scores: Dict[NodeId, HubScore] = {}
    for node_id in graph.nodes:
        scores[node_id] = HubScore(
            out_degree=len(graph.outgoing(node_id)),
            in_degree=len(graph.incoming(node_id)),
            betweenness=centrality[node_id] * scale,
        )
    return scores


# =============================================================================
# CSV emitters
# =============================================================================

NODE_COLUMNS = (
    "node",
    "kind",
    "depth",
    "m",
    "m_exact",
    "l",
    "l_exact",
    "E",
    "E_exact",
    "out_degree",
    "in_degree",
    "betweenness",
)


def nodes_csv(
    kernel: Kernel,
    nodes: Optional[Iterable[NodeId]] = None,
    budget: int = 2_000,
    samples: Optional[int] = None,
    seed: int = 0,
) -> str:
    """One row per node with depth, m, l, E and hub scores."""
    graph = kernel.graph
    targets = list(graph.nodes) if nodes is None else list(nodes)
    layer = depths(graph)
    lengths = LengthTable(graph)
    hubs = hub_scores(graph, samples, seed) if targets else {}

    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(NODE_COLUMNS)
    for node_id in targets:
        node = graph.node(node_id)
        try:
            m = min_complexity(graph, node_id, UNIT, budget)
            m_value, m_exact = m.value, m.exact
        except Unreachable:
            m_value, m_exact = "", ""
        l_report = lengths.report(node_id)
        e_value: object = ""
        e_exact: object = ""
        if any(e.color == "proves" for e in graph.incoming(node_id)):
            report = efficiency(kernel, node_id, budget)
            e_value, e_exact = f"{report.value:.6f}", report.exact
        hub = hubs[node_id]
        writer.writerow(
            [
                node_id,
                node.kind.value,
                layer.get(node_id, ""),
                m_value,
                m_exact,
                int(l_report.value),
                l_report.exact,
                e_value,
                e_exact,
                hub.out_degree,
                hub.in_degree,
                f"{hub.betweenness:.6f}",
            ]
        )
    return out.getvalue()


def growth_csv(counts: Sequence[int]) -> str:
    """``layer,count`` rows for a growth experiment."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("layer", "count"))
    for layer, count in enumerate(counts):
        writer.writerow((layer, count))
    return out.getvalue()


__all__ = [
    # Models and reports
    "CostModel",
    "UNIT",
    "ComplexityReport",
    "EfficiencyReport",
    "HubScore",
    # Measures
    "depths",
    "depth",
    "neighborhood",
    "growth_experiment",
    "complexity",
    "min_complexity",
    "LengthTable",
    "length",
    "is_proposition",
    "statement_lengths",
    "efficiency",
    "hub_scores",
    # CSV
    "NODE_COLUMNS",
    "nodes_csv",
    "growth_csv",
]
