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

"""Bounded proof search over a corpus.

Three provers share one knowledge base of proven facts:

- forward: breadth-first chaining from proven facts (modus ponens,
  conjunction elimination, instantiation of universal facts at ground terms
  of the goal, congruence, and conjunction introduction for conjunctions
  occurring in the goal); seeded with reflexivity on the goal's ground terms
- backward: breadth-first over goals, closing them by a known fact, an
  assumption or reflexivity, and splitting them by introduction, modus
  ponens, congruence, conjunction introduction or induction over the
  innermost natural-number variable
- bidirectional: forward and backward layers alternately, joining when a
  derived fact is a pending backward goal or a backward goal is derived

Budgets count node expansions, never wall-clock time. Every returned proof
has been re-checked by the kernel.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import (
    TYPE_CHECKING,
    Any,
    Callable,
    Dict,
    Iterator,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

from proofgraph.errors import FuelExhausted, ProofGraphError, Unproven
from proofgraph.hypergraph import Hypergraph, NodeId
from proofgraph.kernel.checker import Context, Kernel
from proofgraph.rules import NodeKind

if TYPE_CHECKING:
    from proofgraph.discovery.corpus import Corpus
    from proofgraph.discovery.learning import TacticPriorities

logger = logging.getLogger(__name__)

DEFAULT_PROOF_BUDGET = 2000
DEFAULT_REFUTE_LIMIT = 16

# Most ground terms of a goal used for reflexivity seeds and instantiation.
MAX_GROUND_TERMS = 8
# Most universally bound variables tried by ground checks.
MAX_GROUND_BINDERS = 3

CLOSING_TACTICS = ("known", "assumption", "refl")


# =============================================================================
# Results
# =============================================================================


class Outcome(str, Enum):
    """How a search ended.

    TIMEOUT means the kernel ran out of fuel mid-search, so the answer is
    unknown rather than negative.
    """

    FOUND = "found"
    EXHAUSTED = "exhausted"
    TIMEOUT = "timeout"


@dataclass
class SearchStats:
    """Expansion counts of one search."""

    nodes_expanded: int = 0
    max_depth: int = 0
    outcome: Outcome = Outcome.EXHAUSTED
    mode: str = "backward"

    @property
    def effective_branching(self) -> float:
        """``b`` with ``b ** max_depth == nodes_expanded``; 1.0 for trivial searches."""
        if self.max_depth < 1 or self.nodes_expanded < 1:
            return 1.0
        return max(1.0, self.nodes_expanded ** (1.0 / self.max_depth))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mode": self.mode,
            "nodesExpanded": self.nodes_expanded,
            "maxDepth": self.max_depth,
            "effectiveBranching": round(self.effective_branching, 6),
            "outcome": self.outcome.value,
        }


@dataclass
class SearchResult:
    """Outcome of a proof attempt.

    Attributes:
        goal: The proposition searched for
        proof: Checked proof, when found
        stats: Expansion statistics
        steps: Inference steps in the proof; the m-estimate used by novelty
        counterexample: Ground instance falsifying the goal, if one was found
        partial: Closed lemmas proven by sub-searches of a failed attempt
        trail: Tactics used by the proof, outermost first
    """

    goal: NodeId
    proof: Optional[NodeId]
    stats: SearchStats
    steps: int = 0
    counterexample: Optional[Tuple[int, ...]] = None
    partial: List[Tuple[NodeId, NodeId]] = field(default_factory=list)
    trail: Tuple[str, ...] = ()

    @property
    def found(self) -> bool:
        return self.proof is not None

    @property
    def refuted(self) -> bool:
        return self.counterexample is not None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"goal": self.goal, "proof": self.proof, "steps": self.steps}
        data.update(self.stats.to_dict())
        if self.counterexample is not None:
            data["counterexample"] = list(self.counterexample)
        if self.trail:
            data["trail"] = list(self.trail)
        return data


@dataclass(frozen=True)
class _Solution:
    proof: NodeId
    steps: int
    trail: Tuple[str, ...]


class _Budget:
    def __init__(self, limit: int):
        self.limit = max(0, limit)
        self.expanded = 0
        self.max_depth = 0
        self.exhausted = False

    def spend(self, depth: int) -> bool:
        if self.expanded >= self.limit:
            self.exhausted = True
            return False
        self.expanded += 1
        self.max_depth = max(self.max_depth, depth + 1)
        return True


# =============================================================================
# Knowledge base
# =============================================================================


class _Knowledge:
    """Proven facts of a corpus keyed by normal form, plus derived facts."""

    def __init__(self, corpus: "Corpus"):
        self.kernel: Kernel = corpus.kernel
        self.graph: Hypergraph = corpus.graph
        self.terms = corpus.kernel.terms
        self.facts: Dict[NodeId, NodeId] = {}
        self.initial: List[Tuple[NodeId, NodeId]] = []
        self.by_antecedent: Dict[NodeId, List[Tuple[NodeId, NodeId]]] = {}
        self.by_consequent: Dict[NodeId, List[Tuple[NodeId, NodeId]]] = {}
        self._keys: Dict[NodeId, NodeId] = {}
        for prop, proof in corpus.proven.items():
            if self.add(prop, proof) and self.kind(prop) is not NodeKind.IMPLIES:
                self.initial.append((prop, proof))

    def kind(self, node_id: NodeId) -> NodeKind:
        return self.graph.node(node_id).kind

    def key(self, prop: NodeId) -> NodeId:
        """Normal form of ``prop``; the prop itself when out of fuel."""
        cached = self._keys.get(prop)
        if cached is None:
            try:
                cached = self.kernel.nf(prop)
            except FuelExhausted:
                cached = prop
            self._keys[prop] = cached
        return cached

    def known(self, prop: NodeId) -> Optional[NodeId]:
        return self.facts.get(self.key(prop))

    def add(self, prop: NodeId, proof: NodeId) -> bool:
        """Record a fact; False when an equivalent fact is already known."""
        key = self.key(prop)
        if key in self.facts:
            return False
        self.facts[key] = proof
        node = self.graph.node(prop)
        if node.kind is NodeKind.IMPLIES:
            antecedent, consequent = node.children
            self.by_antecedent.setdefault(self.key(antecedent), []).append((consequent, proof))
            self.by_consequent.setdefault(self.key(consequent), []).append((antecedent, proof))
        return True


def _nat_type(kernel: Kernel, node_id: NodeId) -> bool:
    try:
        return kernel.nf(kernel.infer(node_id)) == kernel.terms.nat()
    except ProofGraphError:
        return False


def _ground_terms(kernel: Kernel, goal: NodeId, limit: int = MAX_GROUND_TERMS) -> List[NodeId]:
    """Closed ℕ-typed subterms of ``goal`` in preorder."""
    graph, terms = kernel.graph, kernel.terms
    found: Dict[NodeId, None] = {}
    stack = [goal]
    seen: Set[NodeId] = set()
    while stack and len(found) < limit:
        current = stack.pop()
        if current in seen:
            continue
        seen.add(current)
        node = graph.node(current)
        closed = terms.is_closed(current) and node.kind is not NodeKind.NAT
        if closed and _nat_type(kernel, current):
            found[current] = None
        if node.kind is not NodeKind.DEFREF:
            stack.extend(reversed(node.children))
    return list(found)


def _conjunctions(kb: _Knowledge, goal: NodeId) -> List[Tuple[NodeId, NodeId]]:
    """(left, right) keys of every conjunction inside ``goal``."""
    found: List[Tuple[NodeId, NodeId]] = []
    stack = [goal]
    while stack:
        node = kb.graph.node(stack.pop())
        if node.kind is NodeKind.AND:
            found.append((kb.key(node.children[0]), kb.key(node.children[1])))
        if node.kind in (NodeKind.AND, NodeKind.IMPLIES, NodeKind.NOT):
            stack.extend(node.children)
    return found


# =============================================================================
# Ground checks
# =============================================================================


@dataclass(frozen=True)
class GroundCheck:
    """Evaluation of a ℕ equation at ground instances.

    Attributes:
        binders: Universally bound ℕ variables
        checked: Instances that evaluated to numerals on both sides
        counterexample: First instance with different sides, outermost
            variable first
    """

    binders: int
    checked: int
    counterexample: Optional[Tuple[int, ...]]

    @property
    def holds(self) -> bool:
        return self.counterexample is None and self.checked > 0


def nat_equation(kernel: Kernel, prop: NodeId) -> Optional[Tuple[int, NodeId]]:
    """(binders, body) when ``prop`` is ``∀x̄:ℕ. Id(ℕ, l, r)``."""
    graph, nat = kernel.graph, kernel.terms.nat()
    binders, body = 0, prop
    node = graph.node(body)
    while node.kind is NodeKind.PI and node.children[0] == nat:
        binders += 1
        body = node.children[1]
        node = graph.node(body)
    if node.kind is not NodeKind.ID or node.children[0] != nat:
        return None
    return binders, body


def _instances(binders: int, limit: int) -> List[Tuple[int, ...]]:
    grid = [v for v in itertools.product(range(limit + 1), repeat=binders) if sum(v) <= limit]
    return sorted(grid, key=lambda v: (sum(v), v))


def ground_check(kernel: Kernel, prop: NodeId, limit: int) -> Optional[GroundCheck]:
    """Evaluate an equation at instances with values summing to at most ``limit``.

    Returns None when ``prop`` is not a ℕ equation with at most three
    universally bound variables.
    """
    shape = nat_equation(kernel, prop)
    if shape is None or shape[0] > MAX_GROUND_BINDERS:
        return None
    binders = shape[0]
    terms, graph = kernel.terms, kernel.graph
    checked = 0
    for values in _instances(binders, limit):
        current = prop
        for value in values:
            current = terms.instantiate(graph.node(current).children[1], terms.numeral(value))
        _, lhs, rhs = graph.node(current).children
        try:
            left, right = kernel.nf(lhs), kernel.nf(rhs)
        except FuelExhausted:
            continue
        lv, rv = terms.numeral_value(left), terms.numeral_value(right)
        if lv is None or rv is None:
            continue
        checked += 1
        if lv != rv:
            return GroundCheck(binders, checked, tuple(values))
    return GroundCheck(binders, checked, None)


def refute(
    kernel: Kernel, prop: NodeId, limit: int = DEFAULT_REFUTE_LIMIT
) -> Optional[Tuple[int, ...]]:
    """A ground counterexample to ``prop``, if one exists within ``limit``."""
    check = ground_check(kernel, prop, limit)
    return None if check is None else check.counterexample


# =============================================================================
# Forward chaining
# =============================================================================

# (prop, proof, steps)
_Fact = Tuple[NodeId, NodeId, int]


class _Forward:
    """Layered forward chaining from the knowledge base."""

    def __init__(self, kb: _Knowledge, goal: NodeId):
        self.kb = kb
        self.goal = goal
        self.ground = _ground_terms(kb.kernel, goal)
        self.conjunctions = _conjunctions(kb, goal)
        self.layer: List[_Fact] = [(prop, proof, 0) for prop, proof in kb.initial]
        self.depth = 0

    def seeds(self) -> List[_Fact]:
        """Reflexivity on the goal's ground terms, when the goal is an equation."""
        terms = self.kb.terms
        if self.kb.kind(self.kb.key(self.goal)) is not NodeKind.ID:
            return []
        seeds = []
        for term in self.ground:
            prop = terms.id(terms.nat(), term, term)
            proof = terms.refl(term)
            if self.kb.add(prop, proof):
                seeds.append((prop, proof, 1))
        self.layer.extend(seeds)
        return seeds

    def consequences(self, prop: NodeId, proof: NodeId, steps: int) -> Iterator[_Fact]:
        kb, terms = self.kb, self.kb.terms
        node = kb.graph.node(prop)
        key = kb.key(prop)
        for consequent, implication in list(kb.by_antecedent.get(key, ())):
            yield consequent, terms.app(implication, proof), steps + 1
        if node.kind is NodeKind.IMPLIES:
            antecedent, consequent = node.children
            premise = kb.known(antecedent)
            if premise is not None:
                yield consequent, terms.app(proof, premise), steps + 1
        if node.kind is NodeKind.AND:
            left, right = node.children
            yield left, terms.proj1(proof), steps + 1
            yield right, terms.proj2(proof), steps + 1
        if node.kind is NodeKind.PI and node.children[0] == terms.nat():
            for term in self.ground:
                yield terms.instantiate(node.children[1], term), terms.app(proof, term), steps + 1
        normal = kb.graph.node(key)
        nat = terms.nat()
        if normal.kind is NodeKind.ID and normal.children[0] == nat and terms.is_closed(key):
            _, lhs, rhs = normal.children
            shifted = terms.id(nat, terms.succ(lhs), terms.succ(rhs))
            yield shifted, terms.cong(proof), steps + 1
        for left, right in self.conjunctions:
            if key == left:
                partner = kb.facts.get(right)
                if partner is not None:
                    yield terms.conj(left, right), terms.pair(proof, partner), steps + 1
            if key == right:
                partner = kb.facts.get(left)
                if partner is not None:
                    yield terms.conj(left, right), terms.pair(partner, proof), steps + 1

    def step(
        self, budget: _Budget, on_new: Callable[[_Fact, NodeId], Optional[_Solution]]
    ) -> Optional[_Solution]:
        """Expand the current layer; stop early when ``on_new`` returns a solution."""
        following: List[_Fact] = []
        for prop, proof, steps in self.layer:
            if not budget.spend(self.depth):
                self.layer = []
                return None
            for fact in self.consequences(prop, proof, steps):
                if not self.kb.add(fact[0], fact[1]):
                    continue
                solution = on_new(fact, self.kb.key(fact[0]))
                if solution is not None:
                    return solution
                following.append(fact)
        self.layer = following
        self.depth += 1
        return None


# =============================================================================
# Backward search
# =============================================================================


def _identity(proof: NodeId) -> NodeId:
    return proof


@dataclass(frozen=True)
class _Goal:
    prop: NodeId
    ctx: Context
    depth: int
    build: Callable[[NodeId], NodeId] = field(compare=False)
    steps: int = 0
    trail: Tuple[str, ...] = ()

    def child(
        self, prop: NodeId, ctx: Context, tactic: str, wrap: Callable[[NodeId], NodeId]
    ) -> "_Goal":
        parent = self.build
        return _Goal(
            prop,
            ctx,
            self.depth + 1,
            lambda proof: parent(wrap(proof)),
            self.steps + 1,
            self.trail + (tactic,),
        )


def _close_over(kernel: Kernel, prop: NodeId, proof: NodeId, ctx: Context) -> Tuple[NodeId, NodeId]:
    """Generalize a goal solved in ``ctx`` to a closed lemma."""
    terms = kernel.terms
    for domain in ctx:
        prop = terms.pi(domain, prop)
        proof = terms.lam(domain, proof)
    return prop, proof


class _Backward:
    """Goal-directed tactics over a shared knowledge base and budget."""

    def __init__(self, kb: _Knowledge, budget: _Budget, priorities: "TacticPriorities"):
        self.kb = kb
        self.kernel = kb.kernel
        self.terms = kb.terms
        self.budget = budget
        order = priorities.ordered()
        self.closers = [t for t in order if t in CLOSING_TACTICS]
        self.splitters = [t for t in order if t not in CLOSING_TACTICS]
        self.attempts: Dict[str, int] = {}
        self.partials: List[Tuple[NodeId, NodeId]] = []

    def _attempt(self, tactic: str) -> None:
        self.attempts[tactic] = self.attempts.get(tactic, 0) + 1

    # -------------------------------------------------------------------------
    # Closing tactics
    # -------------------------------------------------------------------------

    def close(self, goal: _Goal) -> Optional[_Solution]:
        for tactic in self.closers:
            try:
                found = getattr(self, f"_close_{tactic}")(goal)
            except ProofGraphError as exc:
                logger.debug(f"{tactic} failed on {goal.prop}: {exc}")
                continue
            if found is not None:
                proof, steps = found
                self._attempt(tactic)
                return _Solution(goal.build(proof), goal.steps + steps, goal.trail + (tactic,))
        return None

    def _close_known(self, goal: _Goal) -> Optional[Tuple[NodeId, int]]:
        if not self.terms.is_closed(goal.prop):
            return None
        proof = self.kb.known(goal.prop)
        return None if proof is None else (proof, 0)

    def _close_assumption(self, goal: _Goal) -> Optional[Tuple[NodeId, int]]:
        for index, domain in enumerate(goal.ctx):
            if self.kernel.defeq(self.terms.shift(domain, index + 1), goal.prop):
                return self.terms.var(index), 0
        return None

    def _close_refl(self, goal: _Goal) -> Optional[Tuple[NodeId, int]]:
        normal = self.kb.graph.node(self.kb.key(goal.prop))
        if normal.kind is not NodeKind.ID:
            return None
        _, lhs, rhs = normal.children
        if lhs != rhs:
            return None
        original = self.kb.graph.node(goal.prop)
        term = original.children[1] if original.kind is NodeKind.ID else lhs
        return self.terms.refl(term), 1

    # -------------------------------------------------------------------------
    # Splitting tactics
    # -------------------------------------------------------------------------

    def expand(self, goal: _Goal) -> Iterator[Union[_Goal, _Solution]]:
        for tactic in self.splitters:
            produced = False
            try:
                for child in getattr(self, f"_split_{tactic.replace('-', '_')}")(goal):
                    produced = True
                    yield child
            except FuelExhausted:
                raise
            except ProofGraphError as exc:
                logger.debug(f"{tactic} failed on {goal.prop}: {exc}")
            if produced:
                self._attempt(tactic)

    def _split_intro(self, goal: _Goal) -> Iterator[_Goal]:
        node = self.kb.graph.node(goal.prop)
        if node.kind is NodeKind.PI:
            domain, body = node.children
            yield goal.child(
                body, (domain,) + goal.ctx, "intro", lambda p: self.terms.lam(domain, p)
            )
        elif node.kind is NodeKind.IMPLIES:
            premise, conclusion = node.children
            yield goal.child(
                self.terms.shift(conclusion, 1),
                (premise,) + goal.ctx,
                "intro",
                lambda p: self.terms.lam(premise, p),
            )

    def _split_mp(self, goal: _Goal) -> Iterator[_Goal]:
        if not self.terms.is_closed(goal.prop):
            return
        for antecedent, implication in list(self.kb.by_consequent.get(self.kb.key(goal.prop), ())):
            yield goal.child(
                antecedent, goal.ctx, "mp", lambda p, f=implication: self.terms.app(f, p)
            )

    def _split_cong(self, goal: _Goal) -> Iterator[_Goal]:
        terms = self.terms
        normal = self.kb.graph.node(self.kb.key(goal.prop))
        if normal.kind is not NodeKind.ID or normal.children[0] != terms.nat():
            return
        _, lhs, rhs = (self.kb.graph.node(c) for c in normal.children)
        if lhs.kind is NodeKind.SUCC and rhs.kind is NodeKind.SUCC:
            inner = terms.id(terms.nat(), lhs.children[0], rhs.children[0])
            yield goal.child(inner, goal.ctx, "cong", terms.cong)

    def _split_and_intro(self, goal: _Goal) -> Iterator[_Solution]:
        node = self.kb.graph.node(goal.prop)
        if node.kind is not NodeKind.AND:
            return
        parts = []
        for conjunct in node.children:
            solved = self.solve(conjunct, goal.ctx, goal.depth + 1)
            if solved is None:
                self._keep_partials(parts, goal.ctx)
                return
            parts.append((conjunct, solved))
        proof = self.terms.pair(parts[0][1].proof, parts[1][1].proof)
        yield _Solution(
            goal.build(proof),
            goal.steps + 1 + sum(s.steps for _, s in parts),
            goal.trail + ("and-intro",),
        )

    def _split_induction(self, goal: _Goal) -> Iterator[_Solution]:
        terms, kernel = self.terms, self.kernel
        nat = terms.nat()
        if not goal.ctx or kernel.nf(goal.ctx[0]) != nat:
            return
        normal = self.kb.graph.node(self.kb.key(goal.prop))
        if normal.kind is not NodeKind.ID or normal.children[0] != nat:
            return
        if 0 not in terms.free_vars(goal.prop):
            return
        motive = terms.lam(nat, terms.shift(goal.prop, 1, 1))
        base_goal = kernel.nf(terms.app(motive, terms.zero()))
        step_goal = terms.pi(
            nat,
            terms.pi(
                terms.app(terms.shift(motive, 1), terms.var(0)),
                terms.app(terms.shift(motive, 2), terms.succ(terms.var(1))),
            ),
        )
        base = self.solve(base_goal, goal.ctx, goal.depth + 1)
        if base is None:
            return
        step = self.solve(step_goal, goal.ctx, goal.depth + 1)
        if step is None:
            self._keep_partials([(base_goal, base)], goal.ctx)
            return
        proof = terms.rec(motive, base.proof, step.proof, terms.var(0))
        yield _Solution(
            goal.build(proof),
            goal.steps + 1 + base.steps + step.steps,
            goal.trail + ("induction",) + base.trail + step.trail,
        )

    def _keep_partials(self, solved: Sequence[Tuple[NodeId, _Solution]], ctx: Context) -> None:
        for prop, solution in solved:
            self.partials.append(_close_over(self.kernel, prop, solution.proof, ctx))

    # -------------------------------------------------------------------------
    # Search
    # -------------------------------------------------------------------------

    def frontier(self, prop: NodeId, ctx: Context = (), depth: int = 0) -> "_BackwardFrontier":
        return _BackwardFrontier(self, prop, ctx, depth)

    def solve(self, prop: NodeId, ctx: Context = (), depth: int = 0) -> Optional[_Solution]:
        frontier = self.frontier(prop, ctx, depth)
        while frontier.solution is None and frontier.layer:
            frontier.step()
        return frontier.solution


class _BackwardFrontier:
    """One breadth-first goal search, steppable layer by layer."""

    def __init__(self, engine: _Backward, prop: NodeId, ctx: Context, depth: int):
        self.engine = engine
        root = _Goal(prop, ctx, depth, _identity)
        self.layer: List[_Goal] = [root]
        self.seen: Set[Tuple[NodeId, Context]] = {(engine.kb.key(prop), ctx)}
        self.pending: Dict[NodeId, _Goal] = {}
        if not ctx:
            self.pending[engine.kb.key(prop)] = root
        self.solution: Optional[_Solution] = engine.close(root)

    def step(self) -> Optional[_Solution]:
        engine = self.engine
        following: List[_Goal] = []
        for goal in self.layer:
            if not engine.budget.spend(goal.depth):
                self.layer = []
                return None
            for child in engine.expand(goal):
                if isinstance(child, _Solution):
                    self.solution = child
                    return child
                closed = engine.close(child)
                if closed is not None:
                    self.solution = closed
                    return closed
                signature = (engine.kb.key(child.prop), child.ctx)
                if signature in self.seen:
                    continue
                self.seen.add(signature)
                following.append(child)
                if not child.ctx:
                    self.pending.setdefault(signature[0], child)
        self.layer = following
        return None


# =============================================================================
# Provers
# =============================================================================


def _check_goal(kernel: Kernel, goal: NodeId) -> None:
    kernel.check(goal, kernel.terms.sort())


def _verify(kernel: Kernel, goal: NodeId, proof: NodeId, record: bool) -> bool:
    if record:
        result = kernel.check_proof(proof, goal)
        if not result.valid:
            logger.error(f"Search produced a proof of {goal} that fails to check: {result.failure}")
        return result.valid
    try:
        return kernel.defeq(kernel.infer(proof), goal)
    except ProofGraphError as exc:
        logger.error(f"Search produced a proof of {goal} that fails to type: {exc}")
        return False


def _learn(corpus: "Corpus", engine: Optional[_Backward], solution: Optional[_Solution]) -> None:
    """Feed tactic outcomes into the corpus priorities."""
    if engine is None:
        return
    used = list(solution.trail) if solution is not None else []
    for tactic, count in engine.attempts.items():
        wins = used.count(tactic)
        for index in range(count):
            corpus.priorities.record(tactic, index < wins)


def _finish(
    corpus: "Corpus",
    goal: NodeId,
    solution: Optional[_Solution],
    budget: _Budget,
    mode: str,
    record: bool,
    engine: Optional[_Backward] = None,
    timed_out: bool = False,
) -> SearchResult:
    stats = SearchStats(budget.expanded, budget.max_depth, Outcome.EXHAUSTED, mode)
    if timed_out:
        stats.outcome = Outcome.TIMEOUT
    if solution is not None and _verify(corpus.kernel, goal, solution.proof, record):
        stats.outcome = Outcome.FOUND
        if record:
            _learn(corpus, engine, solution)
        result = SearchResult(goal, solution.proof, stats, solution.steps, trail=solution.trail)
    else:
        if record:
            _learn(corpus, engine, None)
        partial = list(engine.partials) if engine is not None else []
        result = SearchResult(goal, None, stats, partial=partial)
    logger.info(
        f"{mode} search for {goal}: {stats.outcome.value} after "
        f"{stats.nodes_expanded} expansions (depth {stats.max_depth})"
    )
    return result


def _known_result(kb: _Knowledge, goal: NodeId, mode: str) -> Optional[SearchResult]:
    proof = kb.known(goal)
    if proof is None:
        return None
    return SearchResult(goal, proof, SearchStats(0, 0, Outcome.FOUND, mode), 0, trail=("known",))


def _refuted(
    corpus: "Corpus", goal: NodeId, limit: Optional[int], mode: str
) -> Optional[SearchResult]:
    if limit is None:
        return None
    counterexample = refute(corpus.kernel, goal, limit)
    if counterexample is None:
        return None
    logger.info(f"Refuted {goal} at ground instance {counterexample}")
    stats = SearchStats(0, 0, Outcome.EXHAUSTED, mode)
    return SearchResult(goal, None, stats, counterexample=counterexample)


def prove_forward(
    corpus: "Corpus", goal: NodeId, budget: int = DEFAULT_PROOF_BUDGET, record: bool = True
) -> SearchResult:
    """Breadth-first forward chaining until ``goal`` is derived.

    Raises:
        TypeMismatch: ``goal`` is not a proposition
    """
    _check_goal(corpus.kernel, goal)
    kb = _Knowledge(corpus)
    known = _known_result(kb, goal, "forward")
    if known is not None:
        return known

    counter = _Budget(budget)
    target = kb.key(goal)
    forward = _Forward(kb, goal)

    def on_new(fact: _Fact, key: NodeId) -> Optional[_Solution]:
        if key == target:
            return _Solution(fact[1], fact[2], ("forward",))
        return None

    solution: Optional[_Solution] = None
    try:
        for fact in forward.seeds():
            solution = solution or on_new(fact, kb.key(fact[0]))
        while solution is None and forward.layer and not counter.exhausted:
            solution = forward.step(counter, on_new)
    except FuelExhausted as exc:
        logger.warning(f"Forward search for {goal} ran out of fuel: {exc}")
        return _finish(corpus, goal, None, counter, "forward", record, timed_out=True)
    return _finish(corpus, goal, solution, counter, "forward", record)


def prove_backward(
    corpus: "Corpus",
    goal: NodeId,
    budget: int = DEFAULT_PROOF_BUDGET,
    record: bool = True,
    refute_limit: Optional[int] = DEFAULT_REFUTE_LIMIT,
) -> SearchResult:
    """Goal-directed breadth-first search.

    Equations over ℕ are first tested at ground instances; a falsifying
    instance is returned as the counterexample without searching.

    Raises:
        TypeMismatch: ``goal`` is not a proposition
    """
    _check_goal(corpus.kernel, goal)
    kb = _Knowledge(corpus)
    known = _known_result(kb, goal, "backward")
    if known is not None:
        return known
    refuted = _refuted(corpus, goal, refute_limit, "backward")
    if refuted is not None:
        return refuted

    counter = _Budget(budget)
    engine = _Backward(kb, counter, corpus.priorities)
    try:
        solution = engine.solve(goal)
    except FuelExhausted as exc:
        logger.warning(f"Backward search for {goal} ran out of fuel: {exc}")
        return _finish(corpus, goal, None, counter, "backward", record, engine, timed_out=True)
    return _finish(corpus, goal, solution, counter, "backward", record, engine)


def prove_bidirectional(
    corpus: "Corpus",
    goal: NodeId,
    budget: int = DEFAULT_PROOF_BUDGET,
    record: bool = True,
    refute_limit: Optional[int] = DEFAULT_REFUTE_LIMIT,
) -> SearchResult:
    """Alternate forward and backward layers, forward first, until they meet.

    Raises:
        TypeMismatch: ``goal`` is not a proposition
    """
    _check_goal(corpus.kernel, goal)
    kb = _Knowledge(corpus)
    known = _known_result(kb, goal, "bidirectional")
    if known is not None:
        return known
    refuted = _refuted(corpus, goal, refute_limit, "bidirectional")
    if refuted is not None:
        return refuted

    counter = _Budget(budget)
    engine = _Backward(kb, counter, corpus.priorities)
    try:
        backward = engine.frontier(goal)
        forward = _Forward(kb, goal)

        def on_new(fact: _Fact, key: NodeId) -> Optional[_Solution]:
            waiting = backward.pending.get(key)
            if waiting is None:
                return None
            return _Solution(
                waiting.build(fact[1]), waiting.steps + fact[2], waiting.trail + ("forward",)
            )

        solution = backward.solution
        for fact in forward.seeds():
            solution = solution or on_new(fact, kb.key(fact[0]))
        while solution is None and not counter.exhausted:
            if not forward.layer and not backward.layer:
                break
            if forward.layer:
                solution = forward.step(counter, on_new)
                if solution is not None or counter.exhausted:
                    break
            if backward.layer:
                solution = backward.step()
    except FuelExhausted as exc:
        logger.warning(f"Bidirectional search for {goal} ran out of fuel: {exc}")
        return _finish(corpus, goal, None, counter, "bidirectional", record, engine, timed_out=True)
    return _finish(corpus, goal, solution, counter, "bidirectional", record, engine)


def forward_layer(
    corpus: "Corpus", budget: int = DEFAULT_PROOF_BUDGET
) -> List[Tuple[NodeId, NodeId]]:
    """New facts one forward step from the proven ones, each kernel-checked."""
    kb = _Knowledge(corpus)
    forward = _Forward(kb, corpus.kernel.terms.sort())
    derived: List[Tuple[NodeId, NodeId]] = []

    def on_new(fact: _Fact, key: NodeId) -> Optional[_Solution]:
        derived.append((fact[0], fact[1]))
        return None

    forward.step(_Budget(budget), on_new)
    return [(p, q) for p, q in derived if corpus.kernel.check_proof(q, p).valid]


# =============================================================================
# Linearized enumeration
# =============================================================================

LINEAR_RULES = ("and-left", "and-right", "mp-library", "mp-statement")


@dataclass
class LinearizedResult:
    """Chains enumerated from one seed statement.

    Attributes:
        counts: Chains of each length, from 0 up to the requested depth
        proofs: Distinct checked proofs of the goal found among them
        library_size: Facts available as side inputs
    """

    counts: List[int]
    proofs: List[NodeId]
    library_size: int
    rules: int = len(LINEAR_RULES)

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def growth_bound(self) -> int:
        """Most extensions of one chain: rules times library facts."""
        return self.rules * self.library_size

    def to_dict(self) -> Dict[str, Any]:
        return {
            "counts": self.counts,
            "proofs": self.proofs,
            "librarySize": self.library_size,
            "growthBound": self.growth_bound,
        }


def enumerate_linearized(
    corpus: "Corpus",
    goal: NodeId,
    library: Hypergraph,
    depth: int,
    seed: Optional[NodeId] = None,
) -> LinearizedResult:
    """Enumerate chains where each step uses the previous statement once.

    Side inputs are the proven facts whose proposition and proof both lie
    in ``library``, chosen independently at every step. ``seed`` defaults to
    the first of them.

    Raises:
        Unproven: ``seed`` is not a proven fact
    """
    kernel, terms = corpus.kernel, corpus.kernel.terms
    kb = _Knowledge(corpus)
    facts = [(p, q) for p, q in corpus.proven.items() if p in library and q in library]
    if seed is None:
        if not facts:
            raise Unproven("the library holds no proven facts to start from")
        seed = facts[0][0]
    if seed not in corpus.proven:
        raise Unproven(f"seed statement {seed} is not proven")

    target = kb.key(goal)
    found: Dict[NodeId, None] = {}
    layer: List[Tuple[NodeId, NodeId]] = [(seed, corpus.proven[seed])]
    counts = [1]
    if kb.key(seed) == target:
        found[corpus.proven[seed]] = None

    for _ in range(depth):
        following: List[Tuple[NodeId, NodeId]] = []
        for statement, proof in layer:
            node = kb.graph.node(statement)
            for side, side_proof in facts:
                following.append((terms.conj(statement, side), terms.pair(proof, side_proof)))
                following.append((terms.conj(side, statement), terms.pair(side_proof, proof)))
                side_node = kb.graph.node(side)
                if (
                    side_node.kind is NodeKind.IMPLIES
                    and kb.key(side_node.children[0]) == kb.key(statement)
                ):
                    following.append((side_node.children[1], terms.app(side_proof, proof)))
                if node.kind is NodeKind.IMPLIES and kb.key(node.children[0]) == kb.key(side):
                    following.append((node.children[1], terms.app(proof, side_proof)))
        counts.append(len(following))
        for statement, proof in following:
            if kb.key(statement) == target:
                found.setdefault(proof, None)
        layer = following

    proofs = [p for p in found if kernel.check_proof(p, goal).valid]
    logger.info(f"Linearized enumeration to depth {depth}: counts {counts}, {len(proofs)} proofs")
    return LinearizedResult(counts, proofs, len(facts))


__all__ = [
    "DEFAULT_PROOF_BUDGET",
    "DEFAULT_REFUTE_LIMIT",
    # Results
    "Outcome",
    "SearchStats",
    "SearchResult",
    "GroundCheck",
    "LinearizedResult",
    "LINEAR_RULES",
    # Ground checks
    "nat_equation",
    "ground_check",
    "refute",
    # Provers
    "prove_forward",
    "prove_backward",
    "prove_bidirectional",
    "forward_layer",
    "enumerate_linearized",
]
