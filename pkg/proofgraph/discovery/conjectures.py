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

"""Conjecture generation.

Heuristics, none of them sound:

- reversal: A -> B suggests B -> A; an equation suggests the same equation
  with the arguments of every two-argument definition swapped
- specialization: fix the outermost variable of a universal fact to 0, 1, 2
- generalization: replace a numeral of a ground equation by a variable
- composition: f x = g x x, and f (h x) = h (f x) for one-argument f, h
- induction: equation templates over the defined functions, kept when
  every ground instance up to a limit holds

Universally quantified candidates are put in a canonical binder order, so
the same statement found by two heuristics is one conjecture.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
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
    Tuple,
    Union,
)

import numpy as np

from proofgraph.discovery.search import ground_check, nat_equation
from proofgraph.errors import EmptyCorpus, ProofGraphError
from proofgraph.hypergraph import NodeId
from proofgraph.kernel.checker import Kernel
from proofgraph.kernel.library import forall_nat, nat_eq
from proofgraph.kernel.terms import binder_positions
from proofgraph.rules import NodeKind

if TYPE_CHECKING:
    from proofgraph.discovery.corpus import Corpus

logger = logging.getLogger(__name__)

GENERATORS = ("reversal", "specialization", "generalization", "composition", "induction")

DEFAULT_GROUND_LIMIT = 10
SPECIALIZE_VALUES = (0, 1, 2)

SeedLike = Union[int, Sequence[int]]


# =============================================================================
# Conjecture
# =============================================================================


class ConjectureStatus(str, Enum):
    OPEN = "open"
    PROVEN = "proven"
    REFUTED = "refuted"
    ABANDONED = "abandoned"


@dataclass
class Conjecture:
    """A proposed statement and what became of it.

    Attributes:
        proposition: Sort-typed statement
        generator: Heuristic that proposed it
        parents: Facts or definitions it was derived from
        status: Moves once, from open to proven, refuted or abandoned
    """

    proposition: NodeId
    generator: str
    parents: Tuple[NodeId, ...] = ()
    status: ConjectureStatus = ConjectureStatus.OPEN

    def mark(self, status: ConjectureStatus) -> None:
        """Settle the conjecture.

        Raises:
            ValueError: It is already settled differently, or ``status`` is open
        """
        if status is ConjectureStatus.OPEN:
            raise ValueError("a conjecture cannot be reopened")
        if self.status is not ConjectureStatus.OPEN and self.status is not status:
            raise ValueError(
                f"conjecture {self.proposition} is already {self.status.value}, "
                f"cannot become {status.value}"
            )
        self.status = status

    def to_dict(self) -> Dict[str, Any]:
        return {
            "proposition": self.proposition,
            "generator": self.generator,
            "parents": list(self.parents),
            "status": self.status.value,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Conjecture":
        return cls(
            proposition=str(data["proposition"]),
            generator=str(data["generator"]),
            parents=tuple(data.get("parents", ())),
            status=ConjectureStatus(data.get("status", "open")),
        )


# =============================================================================
# Term surgery
# =============================================================================


def _rebuild(
    kernel: Kernel, node_id: NodeId, visit: Callable[[NodeId, int], Optional[NodeId]]
) -> NodeId:
    """Rebuild ``node_id`` bottom-up; ``visit`` may replace a subterm at a binder depth."""
    graph = kernel.graph
    memo: Dict[Tuple[NodeId, int], NodeId] = {}

    def go(current: NodeId, depth: int) -> NodeId:
        key = (current, depth)
        if key in memo:
            return memo[key]
        replaced = visit(current, depth)
        if replaced is not None:
            memo[key] = replaced
            return replaced
        node = graph.node(current)
        if node.kind is NodeKind.DEFREF or not node.children:
            memo[key] = current
            return current
        binders = binder_positions(node.kind)
        children = tuple(
            go(child, depth + (1 if pos in binders else 0))
            for pos, child in enumerate(node.children)
        )
        if children == node.children:
            result = current
        else:
            result = graph.add_node(node.kind, node.payload, children)
        memo[key] = result
        return result

    return go(node_id, 0)


def _binary_call(kernel: Kernel, node_id: NodeId) -> Optional[Tuple[NodeId, NodeId, NodeId]]:
    """(definition, first, second) for ``(f a b)`` with ``f`` a definition."""
    graph = kernel.graph
    node = graph.node(node_id)
    if node.kind is not NodeKind.APP:
        return None
    head = graph.node(node.children[0])
    if head.kind is not NodeKind.APP or graph.node(head.children[0]).kind is not NodeKind.DEFREF:
        return None
    return head.children[0], head.children[1], node.children[1]


def swap_arguments(kernel: Kernel, prop: NodeId) -> NodeId:
    """Swap the arguments of every two-argument definition call."""
    terms = kernel.terms

    def visit(current: NodeId, depth: int) -> Optional[NodeId]:
        call = _binary_call(kernel, current)
        if call is None:
            return None
        fn, first, second = call
        return terms.app(fn, swap_arguments(kernel, second), swap_arguments(kernel, first))

    return _rebuild(kernel, prop, visit)


def canonical_binders(kernel: Kernel, prop: NodeId) -> NodeId:
    """Reorder the leading ℕ binders of an equation by first use, outermost first."""
    shape = nat_equation(kernel, prop)
    if shape is None or shape[0] < 2:
        return prop
    count, body = shape
    graph, terms = kernel.graph, kernel.terms

    order: List[int] = []
    stack: List[Tuple[NodeId, int]] = [(body, 0)]
    while stack:
        current, depth = stack.pop()
        node = graph.node(current)
        if node.kind is NodeKind.VAR:
            index = node.payload - depth
            if 0 <= index < count and index not in order:
                order.append(index)
            continue
        if node.kind is NodeKind.DEFREF:
            continue
        binders = binder_positions(node.kind)
        for pos in reversed(range(len(node.children))):
            stack.append((node.children[pos], depth + (1 if pos in binders else 0)))
    order += [index for index in reversed(range(count)) if index not in order]
    mapping = {old: count - 1 - position for position, old in enumerate(order)}

    def visit(current: NodeId, depth: int) -> Optional[NodeId]:
        node = graph.node(current)
        if node.kind is not NodeKind.VAR:
            return None
        index = node.payload - depth
        if 0 <= index < count:
            return terms.var(mapping[index] + depth)
        return current

    return forall_nat(kernel, _rebuild(kernel, body, visit), count)


def _abstract_numeral(kernel: Kernel, prop: NodeId, value: int) -> NodeId:
    """``∀x. prop[value := x]`` for a closed ``prop``."""
    terms = kernel.terms

    def visit(current: NodeId, depth: int) -> Optional[NodeId]:
        found = terms.numeral_value(current)
        if found is None:
            return None
        return terms.var(depth) if found == value else current

    return forall_nat(kernel, _rebuild(kernel, prop, visit), 1)


def _numerals(kernel: Kernel, node_id: NodeId) -> List[int]:
    """Values of maximal numerals in ``node_id``, in preorder, distinct."""
    graph, terms = kernel.graph, kernel.terms
    found: Dict[int, None] = {}
    stack = [node_id]
    while stack:
        current = stack.pop()
        value = terms.numeral_value(current)
        if value is not None:
            found.setdefault(value, None)
            continue
        node = graph.node(current)
        if node.kind is not NodeKind.DEFREF:
            stack.extend(reversed(node.children))
    return list(found)


# =============================================================================
# Heuristics
# =============================================================================


def _functions(corpus: "Corpus") -> Tuple[List[NodeId], List[NodeId]]:
    """Definitions of type ℕ → ℕ and ℕ → ℕ → ℕ, by name."""
    kernel = corpus.kernel
    terms = kernel.terms
    nat = terms.nat()
    unary_type = terms.pi(nat, nat)
    binary_type = terms.pi(nat, terms.pi(nat, nat))
    unary, binary = [], []
    for _, ref in sorted(corpus.definitions.items()):
        try:
            found = kernel.nf(kernel.infer(ref))
        except ProofGraphError:
            continue
        if found == unary_type:
            unary.append(ref)
        elif found == binary_type:
            binary.append(ref)
    return unary, binary


def _reversals(corpus: "Corpus") -> Iterator[Conjecture]:
    kernel = corpus.kernel
    graph, terms = kernel.graph, kernel.terms
    for prop in corpus.proven:
        node = graph.node(prop)
        if node.kind is NodeKind.IMPLIES:
            antecedent, consequent = node.children
            yield Conjecture(terms.implies(consequent, antecedent), "reversal", (prop,))
        elif nat_equation(kernel, prop) is not None:
            swapped = canonical_binders(kernel, swap_arguments(kernel, prop))
            if swapped != prop:
                yield Conjecture(swapped, "reversal", (prop,))


def _specializations(corpus: "Corpus") -> Iterator[Conjecture]:
    kernel = corpus.kernel
    graph, terms = kernel.graph, kernel.terms
    for prop in corpus.proven:
        node = graph.node(prop)
        if node.kind is not NodeKind.PI or node.children[0] != terms.nat():
            continue
        for value in SPECIALIZE_VALUES:
            special = terms.instantiate(node.children[1], terms.numeral(value))
            yield Conjecture(canonical_binders(kernel, special), "specialization", (prop,))


def _ground_facts(corpus: "Corpus") -> Iterator[Tuple[NodeId, NodeId]]:
    """(equation, parent) for proven ground equations and exhibited evaluations."""
    kernel = corpus.kernel
    terms = kernel.terms
    for prop in corpus.proven:
        shape = nat_equation(kernel, prop)
        if shape is not None and shape[0] == 0 and terms.is_closed(prop):
            yield prop, prop
    for _, term in sorted(corpus.terms.items()):
        if terms.numeral_value(term) is not None or not terms.is_closed(term):
            continue
        try:
            if kernel.nf(kernel.infer(term)) != terms.nat():
                continue
            value = kernel.nf(term)
        except ProofGraphError:
            continue
        yield nat_eq(kernel, term, value), term


def _generalizations(corpus: "Corpus") -> Iterator[Conjecture]:
    kernel = corpus.kernel
    for equation, parent in _ground_facts(corpus):
        for value in _numerals(kernel, equation):
            general = _abstract_numeral(kernel, equation, value)
            yield Conjecture(general, "generalization", (parent,))


def _compositions(corpus: "Corpus") -> Iterator[Conjecture]:
    kernel = corpus.kernel
    terms = kernel.terms
    x = terms.var(0)
    unary, binary = _functions(corpus)
    for f in unary:
        for g in binary:
            yield Conjecture(
                forall_nat(kernel, nat_eq(kernel, terms.app(f, x), terms.app(g, x, x))),
                "composition",
                (f, g),
            )
    for index, f in enumerate(unary):
        for h in unary[index + 1 :]:
            lhs = terms.app(f, terms.app(h, x))
            rhs = terms.app(h, terms.app(f, x))
            yield Conjecture(forall_nat(kernel, nat_eq(kernel, lhs, rhs)), "composition", (f, h))


def _templates(corpus: "Corpus") -> Iterator[Tuple[NodeId, NodeId]]:
    """(candidate, definition) equation templates over the defined functions."""
    kernel = corpus.kernel
    t = kernel.terms
    zero, one = t.numeral(0), t.numeral(1)
    x = t.var(0)
    a, b = t.var(1), t.var(0)
    unary, binary = _functions(corpus)
    for g in binary:
        for lhs, rhs in (
            (t.app(g, x, zero), x),
            (t.app(g, zero, x), x),
            (t.app(g, x, zero), zero),
            (t.app(g, zero, x), zero),
            (t.app(g, x, one), x),
            (t.app(g, one, x), x),
            (t.app(g, x, one), t.succ(x)),
            (t.app(g, one, x), t.succ(x)),
        ):
            yield forall_nat(kernel, nat_eq(kernel, lhs, rhs)), g
        for lhs, rhs in (
            (t.app(g, a, b), t.app(g, b, a)),
            (t.app(g, t.succ(a), b), t.succ(t.app(g, a, b))),
            (t.app(g, a, t.succ(b)), t.succ(t.app(g, a, b))),
        ):
            yield forall_nat(kernel, nat_eq(kernel, lhs, rhs), 2), g
    for f in unary:
        for lhs, rhs in (
            (t.app(f, x), x),
            (t.app(f, t.succ(x)), t.succ(t.app(f, x))),
            (t.app(f, t.succ(x)), t.succ(t.succ(t.app(f, x)))),
        ):
            yield forall_nat(kernel, nat_eq(kernel, lhs, rhs)), f


def _inductive(corpus: "Corpus", limit: int) -> Iterator[Conjecture]:
    kernel = corpus.kernel
    for candidate, fn in _templates(corpus):
        check = ground_check(kernel, candidate, limit)
        if check is not None and check.holds:
            yield Conjecture(canonical_binders(kernel, candidate), "induction", (fn,))


# =============================================================================
# Generation
# =============================================================================


def _is_statement(kernel: Kernel, prop: NodeId) -> bool:
    try:
        return kernel.nf(kernel.infer(prop)) == kernel.terms.sort()
    except ProofGraphError:
        return False


def generate_conjectures(
    corpus: "Corpus",
    n: int,
    seed: SeedLike = 0,
    ground_limit: int = DEFAULT_GROUND_LIMIT,
) -> List[Conjecture]:
    """Propose up to ``n`` open conjectures, in an order drawn from ``seed``.

    Candidates that are already proven, or tracked and settled, are skipped.
    Chosen conjectures are tracked in ``corpus.conjectures``.

    Raises:
        ValueError: ``n`` below 1
        EmptyCorpus: no proven facts and no definitions to work from
    """
    if n < 1:
        raise ValueError(f"need at least one conjecture, got {n}")
    if not corpus.proven and not corpus.definitions:
        raise EmptyCorpus("the corpus has no facts or definitions to conjecture from")
    kernel = corpus.kernel

    proven_forms = set()
    for prop in corpus.proven:
        try:
            proven_forms.add(kernel.nf(prop))
        except ProofGraphError:
            proven_forms.add(prop)

    heuristics = (
        _reversals(corpus),
        _specializations(corpus),
        _generalizations(corpus),
        _compositions(corpus),
        _inductive(corpus, ground_limit),
    )
    candidates: Dict[NodeId, Conjecture] = {}
    for stream in heuristics:
        for candidate in stream:
            prop = candidate.proposition
            if prop in candidates or not _is_statement(kernel, prop):
                continue
            try:
                if kernel.nf(prop) in proven_forms:
                    continue
            except ProofGraphError:
                continue
            tracked = corpus.conjectures.get(prop)
            if tracked is not None and tracked.status is not ConjectureStatus.OPEN:
                continue
            candidates[prop] = candidate

    pool = list(candidates.values())
    order = np.random.default_rng(seed).permutation(len(pool)) if pool else []
    chosen: List[Conjecture] = []
    for index in order[:n]:
        candidate = pool[int(index)]
        chosen.append(corpus.conjectures.setdefault(candidate.proposition, candidate))
    logger.info(
        f"Generated {len(chosen)} of {len(pool)} candidate conjectures: "
        f"{[c.generator for c in chosen]}"
    )
    return chosen


__all__ = [
    "GENERATORS",
    "ConjectureStatus",
    "Conjecture",
    "swap_arguments",
    "canonical_binders",
    "generate_conjectures",
]
