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

"""Abstraction mining, utility and corpus compression.

A pattern is a term tree with numbered holes. Mining grows patterns one
node at a time from every position of the exhibited terms, keeping only
those with at least two occurrences. An abstraction is a pattern plus the
types of its slots; adopting it defines a closed lambda term as a new
DefRef, and rewriting replaces each occurrence by an application of that
DefRef.

A hole that sits under binders of its own pattern becomes a function slot:
the occurrence's subterm is abstracted over those binders and the body
applies the slot to the bound variables, so every rewrite beta-reduces back
to the original term.

Utility of an abstraction A over the exhibited terms P::

    U = cost(P) - cost(A) - cost(rewrite(P, A))

where a term's cost is the summed edge cost of its construction with
definitions taken as inputs. Utilities are measured by running the rewrite
on a scratch copy of the graph, so a committed rewrite changes the corpus
cost by exactly the simulated amount.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field, replace
from typing import (
    TYPE_CHECKING,
    Any,
    Callable,
    Dict,
    Iterator,
    List,
    Mapping,
    Optional,
    Tuple,
)

from proofgraph.errors import (
    BudgetZero,
    EmptyCorpus,
    ProofGraphError,
    SemanticDrift,
)
from proofgraph.hypergraph import Hypergraph, Node, NodeId
from proofgraph.kernel.checker import Context, Kernel
from proofgraph.kernel.syntax import KEYWORDS
from proofgraph.kernel.terms import Terms, binder_positions
from proofgraph.metrics import UNIT, CostModel
from proofgraph.rules import NodeKind

if TYPE_CHECKING:
    from proofgraph.discovery.corpus import Corpus

logger = logging.getLogger(__name__)

# =============================================================================
# Defaults
# =============================================================================
GREEDY = "greedy-leftmost-nonoverlapping"
STRATEGIES = (GREEDY,)

DEFAULT_MAX_SIZE = 6
DEFAULT_MAX_ARITY = 2
DEFAULT_TOP_K = 5
DEFAULT_MINE_BUDGET = 5_000

NAME_PREFIX = "abs"


# =============================================================================
# Patterns
# =============================================================================


@dataclass(frozen=True)
class Pattern:
    """A term tree with holes.

    A hole has no kind. A DefRef leaf matches its node id exactly.
    """

    kind: Optional[NodeKind] = None
    payload: Any = None
    children: Tuple["Pattern", ...] = ()
    ref: Optional[NodeId] = None

    @property
    def is_hole(self) -> bool:
        return self.kind is None

    @property
    def size(self) -> int:
        """Number of non-hole nodes."""
        return 0 if self.is_hole else 1 + sum(c.size for c in self.children)

    @property
    def arity(self) -> int:
        """Number of holes."""
        return 1 if self.is_hole else sum(c.arity for c in self.children)

    @classmethod
    def shell(cls, node: Node) -> "Pattern":
        """The one-node pattern of ``node``, every child a hole."""
        if node.kind is NodeKind.DEFREF:
            return cls(node.kind, node.payload, (), node.id)
        return cls(node.kind, node.payload, tuple(HOLE for _ in node.children))

    @classmethod
    def from_node(cls, graph: Hypergraph, node_id: NodeId) -> "Pattern":
        """The hole-free pattern of a whole term."""
        node = graph.node(node_id)
        if node.kind is NodeKind.DEFREF:
            return cls.shell(node)
        return cls(
            node.kind,
            node.payload,
            tuple(cls.from_node(graph, child) for child in node.children),
        )

    def fill(self, index: int, sub: "Pattern") -> "Pattern":
        """Replace hole number ``index`` (preorder) by ``sub``."""
        counter = itertools.count()

        def go(p: Pattern) -> Pattern:
            if p.is_hole:
                return sub if next(counter) == index else p
            if p.arity == 0:
                return p
            return replace(p, children=tuple(go(c) for c in p.children))

        return go(self)

    def is_closed(self, depth: int = 0) -> bool:
        """No variable reaches outside the pattern."""
        if self.is_hole or self.ref is not None:
            return True
        if self.kind is NodeKind.VAR:
            return self.payload < depth
        binders = binder_positions(self.kind)
        return all(
            c.is_closed(depth + (1 if pos in binders else 0))
            for pos, c in enumerate(self.children)
        )

    def build(
        self,
        terms: Terms,
        hole: Optional[Callable[[int, int], NodeId]] = None,
    ) -> NodeId:
        """Construct the pattern in ``terms``' graph.

        ``hole(index, depth)`` supplies each hole, ``depth`` being the
        number of pattern binders above it.
        """
        counter = itertools.count()

        def go(p: Pattern, depth: int) -> NodeId:
            if p.is_hole:
                if hole is None:
                    raise ValueError("pattern has holes; pass a hole builder")
                return hole(next(counter), depth)
            if p.ref is not None:
                return p.ref
            binders = binder_positions(p.kind)
            children = [
                go(c, depth + (1 if pos in binders else 0)) for pos, c in enumerate(p.children)
            ]
            return terms.mk(p.kind, *children, payload=p.payload)

        return go(self, 0)

    def render(self) -> str:
        """S-expression with holes numbered ``?0, ?1, ...`` and de Bruijn ``#i``."""
        counter = itertools.count()

        def go(p: Pattern) -> str:
            if p.is_hole:
                return f"?{next(counter)}"
            if p.kind is NodeKind.VAR:
                return f"#{p.payload}"
            if p.kind is NodeKind.DEFREF:
                return str(p.payload)
            if p.kind is NodeKind.ATOM:
                return f"(atom {p.payload})"
            parts = [go(c) for c in p.children]
            if not parts:
                return KEYWORDS[p.kind]
            if p.kind is NodeKind.APP:
                return f"({' '.join(parts)})"
            if p.kind is NodeKind.AXIOM:
                return f"(axiom {p.payload} {parts[0]})"
            return f"({KEYWORDS[p.kind]} {' '.join(parts)})"

        return go(self)

    def __str__(self) -> str:
        return self.render()


HOLE = Pattern()

# A slot binding: the matched subterm and the pattern binder domains above
# it, outermost first.
Slot = Tuple[NodeId, Tuple[NodeId, ...]]


def match(graph: Hypergraph, pattern: Pattern, node_id: NodeId) -> Optional[List[Slot]]:
    """Slot bindings of ``pattern`` at ``node_id``, or None."""

    def go(p: Pattern, current: NodeId, inner: Tuple[NodeId, ...]) -> Optional[List[Slot]]:
        if p.is_hole:
            return [(current, inner)]
        if p.ref is not None:
            return [] if current == p.ref else None
        node = graph.node(current)
        if (
            node.kind is not p.kind
            or node.payload != p.payload
            or len(node.children) != len(p.children)
        ):
            return None
        binders = binder_positions(node.kind)
        slots: List[Slot] = []
        for pos, (sub, child) in enumerate(zip(p.children, node.children)):
            found = go(sub, child, inner + (node.children[0],) if pos in binders else inner)
            if found is None:
                return None
            slots.extend(found)
        return slots

    return go(pattern, node_id, ())


def _wrap(terms: Terms, node_id: NodeId, inner: Tuple[NodeId, ...]) -> NodeId:
    """Abstract a slot's subterm over the pattern binders above it."""
    for domain in reversed(inner):
        node_id = terms.lam(domain, node_id)
    return node_id


# =============================================================================
# Abstractions
# =============================================================================


@dataclass
class Abstraction:
    """A pattern with typed slots.

    Attributes:
        pattern: The shared shape
        slot_types: Closed type of each slot, as hole-free patterns
        cost: Cost of the body under the model it was scored with
        utility: Last computed utility
        occurrences: Occurrences replaced by the last simulated rewrite
        name: Definition name once adopted
        ref: DefRef node once adopted
    """

    pattern: Pattern
    slot_types: Tuple[Pattern, ...]
    cost: float = 0.0
    utility: float = 0.0
    occurrences: int = 0
    name: Optional[str] = None
    ref: Optional[NodeId] = None

    def __post_init__(self) -> None:
        if len(self.slot_types) != self.pattern.arity:
            raise ValueError(
                f"{self.pattern} has {self.pattern.arity} slots, "
                f"got {len(self.slot_types)} slot types"
            )

    @property
    def arity(self) -> int:
        return self.pattern.arity

    @property
    def key(self) -> str:
        return self.pattern.render()

    def body(self, terms: Terms) -> NodeId:
        """``λ slots. pattern`` with each hole applied to its pattern binders."""
        n = self.arity

        def hole(index: int, depth: int) -> NodeId:
            slot = terms.var(depth + n - 1 - index)
            bound = [terms.var(depth - 1 - j) for j in range(depth)]
            return terms.app(slot, *bound) if bound else slot

        body = self.pattern.build(terms, hole)
        for slot_type in reversed(self.slot_types):
            body = terms.lam(slot_type.build(terms), body)
        return body

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pattern": self.key,
            "arity": self.arity,
            "slot_types": [t.render() for t in self.slot_types],
            "cost": self.cost,
            "utility": self.utility,
            "occurrences": self.occurrences,
            "name": self.name,
        }

    def __repr__(self) -> str:
        return f"Abstraction({self.key}, U={self.utility}, name={self.name})"


def term_cost(graph: Hypergraph, node_id: NodeId, model: CostModel = UNIT) -> float:
    """Construction cost of one term, DefRefs and roots counted as inputs."""
    total = 0.0
    seen = set()
    stack = [node_id]
    while stack:
        current = stack.pop()
        if current in seen:
            continue
        seen.add(current)
        node = graph.node(current)
        edge = None if node.kind is NodeKind.DEFREF else graph.construction_edge(current)
        if edge is None:
            total += model.input_cost(node)
        else:
            total += model.edge_cost(edge)
            stack.extend(edge.inputs)
    return total


def corpus_cost(corpus: "Corpus", model: CostModel = UNIT) -> float:
    """Summed cost of the exhibited terms and of every definition body."""
    graph = corpus.graph
    total = sum(term_cost(graph, t, model) for t in corpus.terms.values())
    for ref in corpus.definitions.values():
        total += term_cost(graph, graph.node(ref).children[0], model)
    return total


def compression_ratio(before: float, after: float) -> float:
    """``before / after``; 1.0 means no compression."""
    if after <= 0:
        return float("inf") if before > 0 else 1.0
    return before / after


# =============================================================================
# Rewriting
# =============================================================================


class _Rewriter:
    """Greedy top-down rewrite of terms with one abstraction."""

    def __init__(self, kernel: Kernel, abstraction: Abstraction, ref: NodeId):
        self.kernel = kernel
        self.terms = kernel.terms
        self.graph = kernel.graph
        self.abstraction = abstraction
        self.ref = ref
        self.slot_types = tuple(t.build(self.terms) for t in abstraction.slot_types)
        self.occurrences = 0
        self._memo: Dict[Tuple[NodeId, Context], NodeId] = {}

    def _typed(self, slots: List[Slot], ctx: Context) -> bool:
        for (node_id, inner), expected in zip(slots, self.slot_types):
            try:
                actual = self.kernel.nf(self.kernel.infer(_wrap(self.terms, node_id, inner), ctx))
            except ProofGraphError:
                return False
            if actual != expected:
                return False
        return True

    def rewrite(self, node_id: NodeId, ctx: Context = ()) -> NodeId:
        key = (node_id, ctx)
        done = self._memo.get(key)
        if done is not None:
            return done

        slots = match(self.graph, self.abstraction.pattern, node_id)
        if slots is not None and self._typed(slots, ctx):
            self.occurrences += 1
            values = [
                _wrap(self.terms, self.rewrite(arg, tuple(reversed(inner)) + ctx), inner)
                for arg, inner in slots
            ]
            result = self.terms.app(self.ref, *values) if values else self.ref
        else:
            node = self.graph.node(node_id)
            if node.kind is NodeKind.DEFREF or not node.children:
                result = node_id
            else:
                binders = binder_positions(node.kind)
                children = tuple(
                    self.rewrite(child, (node.children[0],) + ctx if pos in binders else ctx)
                    for pos, child in enumerate(node.children)
                )
                if children == node.children:
                    result = node_id
                else:
                    result = self.terms.mk(node.kind, *children, payload=node.payload)
        self._memo[key] = result
        return result


def _materialize(kernel: Kernel, abstraction: Abstraction, name: str) -> Tuple[NodeId, NodeId]:
    """Body and DefRef of ``abstraction`` in a scratch kernel.

    Raises:
        TypeMismatch: the body does not type-check
    """
    body = abstraction.body(kernel.terms)
    kernel.infer(body)
    ref = kernel.graph.add_node(NodeKind.DEFREF, name, (body,))
    return body, ref


def _scratch(kernel: Kernel) -> Kernel:
    return Kernel(kernel.graph.copy(), kernel.fuel)


def _next_name(definitions: Mapping[str, NodeId]) -> str:
    for index in itertools.count(1):
        name = f"{NAME_PREFIX}{index}"
        if name not in definitions:
            return name
    raise AssertionError("unreachable")


def _simulate(
    scratch: Kernel,
    terms: Mapping[str, NodeId],
    abstraction: Abstraction,
    name: str,
    model: CostModel,
) -> float:
    body, ref = _materialize(scratch, abstraction, name)
    graph = scratch.graph
    abstraction.cost = term_cost(graph, body, model)
    rewriter = _Rewriter(scratch, abstraction, ref)
    before = after = 0.0
    for node_id in terms.values():
        before += term_cost(graph, node_id, model)
        after += term_cost(graph, rewriter.rewrite(node_id), model)
    abstraction.occurrences = rewriter.occurrences
    abstraction.utility = before - abstraction.cost - after
    return abstraction.utility


def utility(
    corpus: "Corpus",
    abstraction: Abstraction,
    strategy: str = GREEDY,
    model: CostModel = UNIT,
) -> float:
    """Simulated utility of ``abstraction`` over the exhibited terms.

    Nothing is added to the corpus graph.

    Raises:
        TypeMismatch: the abstraction body does not type-check
        ValueError: unknown strategy
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown rewrite strategy {strategy!r}")
    name = abstraction.name or _next_name(corpus.definitions)
    return _simulate(_scratch(corpus.kernel), corpus.terms, abstraction, name, model)


@dataclass
class RewriteOutcome:
    """Result of a committed rewrite.

    Attributes:
        before: Exhibited terms before the rewrite
        after: Exhibited terms after the rewrite
        occurrences: Occurrences replaced
        utility: Measured cost(P) - cost(A) - cost(P')
        strategy: Rewrite strategy used
        tombstoned: Nodes no longer referenced after the rewrite
    """

    before: Dict[str, NodeId]
    after: Dict[str, NodeId]
    occurrences: int
    utility: float
    strategy: str = GREEDY
    tombstoned: int = 0

    @property
    def changed(self) -> List[str]:
        return [name for name, node in self.before.items() if self.after[name] != node]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "occurrences": self.occurrences,
            "utility": self.utility,
            "strategy": self.strategy,
            "changed": self.changed,
            "tombstoned": self.tombstoned,
        }


def adopt(corpus: "Corpus", abstraction: Abstraction, round_index: int = 0) -> NodeId:
    """Define the abstraction's body under a fresh name.

    Raises:
        TypeMismatch: the body does not type-check
    """
    if abstraction.ref is not None:
        return abstraction.ref
    name = _next_name(corpus.definitions)
    ref = corpus.kernel.define(name, abstraction.body(corpus.kernel.terms))
    abstraction.name, abstraction.ref = name, ref
    corpus.provenance[name] = {
        "round": round_index,
        "utility": abstraction.utility,
        "occurrences": abstraction.occurrences,
        "pattern": abstraction.key,
    }
    corpus.record(
        "compress",
        "adopt",
        (ref,),
        {"name": name, "pattern": abstraction.key, "utility": abstraction.utility},
    )
    logger.info(f"Adopted {name} = {abstraction.key} (U={abstraction.utility})")
    return ref


def rewrite(
    corpus: "Corpus",
    abstraction: Abstraction,
    strategy: str = GREEDY,
    verify: Optional[int] = None,
    model: CostModel = UNIT,
) -> RewriteOutcome:
    """Replace occurrences in the exhibited terms by DefRef applications.

    Each rewritten term gets a ``rewrite`` Computation edge to its
    original. ``verify`` limits how many rewritten terms are normalized
    for the normal-form check; None checks all of them.

    Raises:
        SemanticDrift: a rewritten term normalizes differently
        ValueError: unknown strategy, or the abstraction is not adopted
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown rewrite strategy {strategy!r}")
    if abstraction.ref is None:
        raise ValueError("adopt the abstraction before rewriting with it")

    kernel, graph = corpus.kernel, corpus.graph
    rewriter = _Rewriter(kernel, abstraction, abstraction.ref)
    before = dict(corpus.terms)
    after = {name: rewriter.rewrite(node_id) for name, node_id in before.items()}
    changed = [(before[n], after[n]) for n in before if before[n] != after[n]]

    sample = changed if verify is None else changed[:verify]
    for old, new in sample:
        lhs, rhs = kernel.normalize(old), kernel.normalize(new)
        if not (lhs.complete and rhs.complete):
            logger.warning(f"Skipped normal-form check of {old}: out of fuel")
            continue
        if lhs.node != rhs.node:
            raise SemanticDrift(
                f"rewriting {old} to {new} changed its normal form "
                f"from {lhs.node} to {rhs.node}"
            )

    for old, new in changed:
        graph.add_edge("rewrite", (new,), (old,))

    body = graph.node(abstraction.ref).children[0]
    cost_before = sum(term_cost(graph, t, model) for t in before.values())
    cost_after = sum(term_cost(graph, t, model) for t in after.values())
    measured = cost_before - term_cost(graph, body, model) - cost_after

    corpus.terms.update(after)
    live = corpus.live_nodes()
    dropped = graph.ancestors(old for old, _ in changed) - live
    corpus.tombstones |= dropped

    outcome = RewriteOutcome(before, after, rewriter.occurrences, measured, strategy, len(dropped))
    corpus.record("compress", "rewrite", (abstraction.ref,), outcome.to_dict())
    logger.info(
        f"Rewrote {len(changed)} terms with {abstraction.name}: "
        f"{rewriter.occurrences} occurrences, U={measured}"
    )
    return outcome


# =============================================================================
# Mining
# =============================================================================


@dataclass(frozen=True)
class _Site:
    term: str
    node: NodeId
    ctx: Context
    holes: Tuple[Slot, ...]


def _positions(
    graph: Hypergraph, terms: Mapping[str, NodeId]
) -> Iterator[Tuple[str, NodeId, Context]]:
    """Every (term, subterm, context) position, preorder, terms by name."""
    for name in sorted(terms):
        stack: List[Tuple[NodeId, Context]] = [(terms[name], ())]
        while stack:
            node_id, ctx = stack.pop()
            yield name, node_id, ctx
            node = graph.node(node_id)
            if node.kind is NodeKind.DEFREF:
                continue
            binders = binder_positions(node.kind)
            for pos in reversed(range(len(node.children))):
                child_ctx = (node.children[0],) + ctx if pos in binders else ctx
                stack.append((node.children[pos], child_ctx))


def _child_slots(node: Node, inner: Tuple[NodeId, ...]) -> Tuple[Slot, ...]:
    if node.kind is NodeKind.DEFREF:
        return ()
    binders = binder_positions(node.kind)
    return tuple(
        (child, inner + (node.children[0],) if pos in binders else inner)
        for pos, child in enumerate(node.children)
    )


def _grow(
    graph: Hypergraph, terms: Mapping[str, NodeId], max_size: int, budget: int
) -> Dict[Pattern, List[_Site]]:
    """Frequent patterns by incremental growth, breadth first."""
    roots: Dict[Pattern, List[_Site]] = {}
    for name, node_id, ctx in _positions(graph, terms):
        node = graph.node(node_id)
        if not node.children or node.kind is NodeKind.DEFREF:
            continue
        site = _Site(name, node_id, ctx, _child_slots(node, ()))
        roots.setdefault(Pattern.shell(node), []).append(site)

    queue = deque(
        (p, s) for p, s in sorted(roots.items(), key=lambda kv: kv[0].render()) if len(s) >= 2
    )
    seen = {p for p, _ in queue}
    found: Dict[Pattern, List[_Site]] = {}
    while queue:
        if len(found) >= budget:
            logger.warning(f"Pattern mining stopped at {budget} candidates")
            break
        pattern, sites = queue.popleft()
        found[pattern] = sites
        if pattern.size >= max_size:
            continue
        for index in range(pattern.arity):
            groups: Dict[Pattern, List[_Site]] = {}
            for site in sites:
                hole_node, inner = site.holes[index]
                node = graph.node(hole_node)
                grown_holes = (
                    site.holes[:index] + _child_slots(node, inner) + site.holes[index + 1 :]
                )
                groups.setdefault(Pattern.shell(node), []).append(
                    replace(site, holes=grown_holes)
                )
            for shell, group in sorted(groups.items(), key=lambda kv: kv[0].render()):
                if len(group) < 2:
                    continue
                grown = pattern.fill(index, shell)
                if grown in seen or not grown.is_closed():
                    continue
                seen.add(grown)
                queue.append((grown, group))
    return found


def _slot_types(kernel: Kernel, sites: List[_Site]) -> Optional[Tuple[Pattern, ...]]:
    """Closed slot types taken from the first site that types cleanly."""
    terms = kernel.terms
    for site in sites:
        types: List[Pattern] = []
        try:
            for node_id, inner in site.holes:
                found = kernel.nf(kernel.infer(_wrap(terms, node_id, inner), site.ctx))
                if not terms.is_closed(found):
                    break
                types.append(Pattern.from_node(kernel.graph, found))
        except ProofGraphError:
            continue
        if len(types) == len(site.holes):
            return tuple(types)
    return None


def mine_terms(
    kernel: Kernel,
    terms: Mapping[str, NodeId],
    max_size: int = DEFAULT_MAX_SIZE,
    max_arity: int = DEFAULT_MAX_ARITY,
    top_k: int = DEFAULT_TOP_K,
    model: CostModel = UNIT,
    budget: int = DEFAULT_MINE_BUDGET,
) -> List[Abstraction]:
    """Mine ``terms`` without touching ``kernel``'s graph.

    Returns:
        Up to ``top_k`` abstractions by descending utility, ties broken by
        pattern rendering.
    """
    if max_size < 2:
        raise ValueError(f"max_size must be at least 2, got {max_size}")
    if max_arity < 0:
        raise ValueError(f"max_arity must be non-negative, got {max_arity}")
    if budget <= 0:
        raise BudgetZero(f"mining budget must be positive, got {budget}")

    frequent = _grow(kernel.graph, terms, max_size, budget)
    scratch = _scratch(kernel)
    name = _next_name(kernel.definitions)
    scored: List[Abstraction] = []
    for pattern, sites in frequent.items():
        if pattern.size < 2 or pattern.arity > max_arity:
            continue
        slot_types = _slot_types(scratch, sites)
        if slot_types is None:
            continue
        candidate = Abstraction(pattern, slot_types)
        try:
            _simulate(scratch, terms, candidate, name, model)
        except ProofGraphError as exc:
            logger.debug(f"Dropped {pattern}: {exc}")
            continue
        scored.append(candidate)

    scored.sort(key=lambda a: (-a.utility, a.key))
    logger.info(
        f"Mined {len(frequent)} frequent patterns, {len(scored)} abstractions; "
        f"best U={scored[0].utility if scored else None}"
    )
    return scored[:top_k]


def mine(
    corpus: "Corpus",
    max_size: int = DEFAULT_MAX_SIZE,
    max_arity: int = DEFAULT_MAX_ARITY,
    top_k: int = DEFAULT_TOP_K,
    model: CostModel = UNIT,
    budget: int = DEFAULT_MINE_BUDGET,
) -> List[Abstraction]:
    """Top abstractions over the corpus' exhibited terms.

    Raises:
        EmptyCorpus: nothing is exhibited
    """
    if not corpus.terms:
        raise EmptyCorpus("the corpus exhibits no terms to mine")
    return mine_terms(corpus.kernel, corpus.terms, max_size, max_arity, top_k, model, budget)


# =============================================================================
# Compression
# =============================================================================


def branching_factor(corpus: "Corpus") -> int:
    """Well-typed one-step applications of definitions to exhibited ℕ terms."""
    kernel = corpus.kernel
    nat = kernel.terms.nat()
    nat_terms = set()
    for node_id in corpus.terms.values():
        try:
            if kernel.nf(kernel.infer(node_id)) == nat:
                nat_terms.add(node_id)
        except ProofGraphError:
            continue
    count = 0
    for ref in corpus.definitions.values():
        try:
            found = kernel.graph.node(kernel.nf(kernel.infer(ref)))
        except ProofGraphError:
            continue
        if found.kind is NodeKind.PI and found.children[0] == nat:
            count += len(nat_terms)
    return count


@dataclass
class CompressionReport:
    """What compress did, round by round."""

    adopted: List[Abstraction] = field(default_factory=list)
    outcomes: List[RewriteOutcome] = field(default_factory=list)
    costs: List[float] = field(default_factory=list)
    branching: List[int] = field(default_factory=list)

    @property
    def cost_before(self) -> float:
        return self.costs[0]

    @property
    def cost_after(self) -> float:
        return self.costs[-1]

    @property
    def ratio(self) -> float:
        return compression_ratio(self.cost_before, self.cost_after)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "adopted": [a.to_dict() for a in self.adopted],
            "costs": self.costs,
            "branching": self.branching,
            "ratio": self.ratio,
        }


def compress(
    corpus: "Corpus",
    rounds: int = 1,
    max_size: int = DEFAULT_MAX_SIZE,
    max_arity: int = DEFAULT_MAX_ARITY,
    top_k: int = DEFAULT_TOP_K,
    model: CostModel = UNIT,
    verify: Optional[int] = None,
) -> CompressionReport:
    """Mine, adopt the best abstraction and rewrite, for up to ``rounds`` rounds.

    Stops early once the best utility is not positive.
    """
    if rounds < 1:
        raise BudgetZero(f"compress needs at least one round, got {rounds}")
    report = CompressionReport(costs=[corpus_cost(corpus, model)])
    report.branching.append(branching_factor(corpus))

    for round_index in range(rounds):
        candidates = (
            mine(corpus, max_size, max_arity, top_k, model) if corpus.terms else []
        )
        if not candidates or candidates[0].utility <= 0:
            best = candidates[0].utility if candidates else None
            corpus.record("compress", "fixpoint", (), {"round": round_index, "best": best})
            logger.info(f"Compression reached a fixpoint after {round_index} rounds")
            break
        best_candidate = candidates[0]
        adopt(corpus, best_candidate, round_index=corpus.t)
        report.outcomes.append(rewrite(corpus, best_candidate, verify=verify, model=model))
        report.adopted.append(best_candidate)
        report.costs.append(corpus_cost(corpus, model))
        report.branching.append(branching_factor(corpus))
    return report


__all__ = [
    # Patterns
    "Pattern",
    "HOLE",
    "match",
    # Abstractions
    "GREEDY",
    "STRATEGIES",
    "Abstraction",
    "RewriteOutcome",
    "CompressionReport",
    # Costs
    "term_cost",
    "corpus_cost",
    "compression_ratio",
    "branching_factor",
    # Operations
    "mine_terms",
    "mine",
    "utility",
    "adopt",
    "rewrite",
    "compress",
]
