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

"""Type checking kernel.

The kernel types terms in a context of de Bruijn-indexed hypotheses
(``ctx[0]`` is the innermost). Definitional equality is equality of normal
forms within the kernel's fuel; the propositional connectives read as
their type-theoretic counterparts (``A ⇒ B`` as a non-dependent Π and
``A ∧ B`` as a non-dependent Σ) when types are compared.

There is one universe, ``Sort``, which is its own type.

Example:
    kernel = Kernel()
    two = kernel.terms.numeral(2)
    judgment = kernel.mk(NodeKind.REFL, two)
    result = kernel.check_proof(judgment.subject, judgment.type)
    assert result.valid
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from proofgraph.errors import (
    DuplicateName,
    FuelExhausted,
    OpenTerm,
    TypeMismatch,
    UnboundVariable,
)
from proofgraph.hypergraph import EdgeId, Hypergraph, NodeId
from proofgraph.kernel.reduction import NormalizeResult, Reducer
from proofgraph.kernel.terms import Terms
from proofgraph.rules import NodeKind

logger = logging.getLogger(__name__)

DEFAULT_FUEL = 10_000

Context = Tuple[NodeId, ...]


class CheckStatus(str, Enum):
    VALID = "valid"
    INVALID = "invalid"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Judgment:
    """``subject : type`` together with the typing edge that records it.

    ``evidence`` is None only for open terms, whose typing depends on the
    context and is therefore not recorded in the graph.
    """

    subject: NodeId
    type: NodeId
    evidence: Optional[EdgeId] = None
    context: Context = ()


@dataclass(frozen=True)
class CheckResult:
    """Outcome of :meth:`Kernel.check_proof`."""

    status: CheckStatus
    failure: Optional[str] = None
    judgment: Optional[Judgment] = None

    @property
    def valid(self) -> bool:
        return self.status is CheckStatus.VALID

    def to_dict(self) -> Dict[str, Any]:
        return {"status": self.status.value, "failure": self.failure}


class Kernel:
    """Constructors, typing, reduction and proof checking over one graph."""

    def __init__(self, graph: Optional[Hypergraph] = None, fuel: int = DEFAULT_FUEL):
        self.graph = graph if graph is not None else Hypergraph()
        self.terms = Terms(self.graph)
        self.reducer = Reducer(self.terms)
        self.fuel = fuel
        self.definitions: Dict[str, NodeId] = {}
        self._infer_cache: Dict[Tuple[Context, NodeId], NodeId] = {}
        self._canon_cache: Dict[NodeId, NodeId] = {}
        for node in self.graph.nodes.values():
            if node.kind is NodeKind.DEFREF:
                self.definitions[node.payload] = node.id

    # -------------------------------------------------------------------------
    # Reduction
    # -------------------------------------------------------------------------

    def reduce_step(self, node_id: NodeId) -> Optional[NodeId]:
        return self.reducer.reduce_step(node_id)

    def normalize(self, node_id: NodeId, fuel: Optional[int] = None) -> NormalizeResult:
        return self.reducer.normalize(node_id, self.fuel if fuel is None else fuel)

    def nf(self, node_id: NodeId) -> NodeId:
        """Normal form within the kernel's fuel; raises FuelExhausted."""
        return self.reducer.normal_form(node_id, self.fuel)

    def _canon(self, node_id: NodeId) -> NodeId:
        """Rewrite connectives into Π/Σ form for comparison."""
        cached = self._canon_cache.get(node_id)
        if cached is not None:
            return cached
        terms = self.terms
        node = self.graph.node(node_id)
        children = tuple(self._canon(child) for child in node.children)
        if node.kind is NodeKind.AND:
            result = terms.sigma(children[0], terms.shift(children[1], 1))
        elif node.kind is NodeKind.IMPLIES:
            result = terms.pi(children[0], terms.shift(children[1], 1))
        elif children == node.children:
            result = node_id
        else:
            result = self.graph.add_node(node.kind, node.payload, children)
        self._canon_cache[node_id] = result
        return result

    def defeq(self, lhs: NodeId, rhs: NodeId) -> bool:
        """Definitional equality.

        Raises:
            FuelExhausted: Either side failed to normalize within fuel
        """
        if lhs == rhs:
            return True
        left, right = self.nf(lhs), self.nf(rhs)
        return left == right or self._canon(left) == self._canon(right)

    # -------------------------------------------------------------------------
    # Typing
    # -------------------------------------------------------------------------

    def _mismatch(self, message: str, expected: NodeId, actual: NodeId) -> TypeMismatch:
        return TypeMismatch(f"{message}: expected {expected}, got {actual}", expected, actual)

    def _ensure_type(self, node_id: NodeId, ctx: Context) -> None:
        sort = self.terms.sort()
        actual = self.infer(node_id, ctx)
        if not self.defeq(actual, sort):
            raise self._mismatch(f"{node_id} is not a type", sort, actual)

    def check(self, node_id: NodeId, expected: NodeId, ctx: Context = ()) -> None:
        """Check ``node_id : expected`` in ``ctx``.

        Raises:
            TypeMismatch: The inferred type is not definitionally ``expected``
        """
        node = self.graph.node(node_id)
        if node.kind is NodeKind.PAIR:
            target = self.graph.node(self.nf(expected))
            if target.kind is NodeKind.SIGMA:
                first, second = node.children
                self.check(first, target.children[0], ctx)
                self.check(second, self.terms.instantiate(target.children[1], first), ctx)
                return
            if target.kind is NodeKind.AND:
                self.check(node.children[0], target.children[0], ctx)
                self.check(node.children[1], target.children[1], ctx)
                return
        actual = self.infer(node_id, ctx)
        if not self.defeq(actual, expected):
            raise self._mismatch(f"{node.kind.value} {node_id}", expected, actual)

    def infer(self, node_id: NodeId, ctx: Context = ()) -> NodeId:
        """Infer the type of ``node_id`` in ``ctx``.

        Raises:
            TypeMismatch: The term is ill-typed
            UnboundVariable: A variable points past ``ctx``
            FuelExhausted: A type failed to normalize
        """
        key = (ctx, node_id)
        cached = self._infer_cache.get(key)
        if cached is not None:
            return cached
        node = self.graph.node(node_id)
        if node.kind is NodeKind.SUCC:
            return self._infer_successors(node_id, ctx)
        result = self._infer_parts(node.kind, node.payload, node.children, ctx)
        self._infer_cache[key] = result
        return result

    def _infer_successors(self, node_id: NodeId, ctx: Context) -> NodeId:
        """Type a successor chain in a loop: the base must be Nat."""
        nat = self.terms.nat()
        chain: List[NodeId] = []
        current = node_id
        while (ctx, current) not in self._infer_cache:
            node = self.graph.node(current)
            if node.kind is not NodeKind.SUCC:
                break
            chain.append(current)
            current = node.children[0]
        self.check(current, nat, ctx)
        for link in chain:
            self._infer_cache[(ctx, link)] = nat
        return nat

    def _infer_parts(
        self,
        kind: NodeKind,
        payload: Any,
        children: Tuple[NodeId, ...],
        ctx: Context,
    ) -> NodeId:
        terms = self.terms

        if kind in (NodeKind.SORT, NodeKind.NAT, NodeKind.ATOM):
            return terms.sort()

        if kind is NodeKind.ZERO:
            return terms.nat()

        if kind is NodeKind.SUCC:
            self.check(children[0], terms.nat(), ctx)
            return terms.nat()

        if kind is NodeKind.VAR:
            if payload >= len(ctx):
                raise UnboundVariable(payload, len(ctx))
            return terms.shift(ctx[payload], payload + 1)

        if kind in (NodeKind.AND, NodeKind.IMPLIES, NodeKind.NOT):
            for child in children:
                self._ensure_type(child, ctx)
            return terms.sort()

        if kind is NodeKind.AXIOM:
            self._ensure_type(children[0], ctx)
            return children[0]

        if kind is NodeKind.DEFREF:
            return self.infer(children[0], ())

        if kind in (NodeKind.PI, NodeKind.SIGMA):
            domain, body = children
            self._ensure_type(domain, ctx)
            self._ensure_type(body, (domain,) + ctx)
            return terms.sort()

        if kind is NodeKind.LAMBDA:
            domain, body = children
            self._ensure_type(domain, ctx)
            return terms.pi(domain, self.infer(body, (domain,) + ctx))

        if kind is NodeKind.APP:
            fn, arg = children
            fn_type = self.graph.node(self.nf(self.infer(fn, ctx)))
            if fn_type.kind is NodeKind.PI:
                self.check(arg, fn_type.children[0], ctx)
                return self.nf(terms.instantiate(fn_type.children[1], arg))
            if fn_type.kind is NodeKind.IMPLIES:
                self.check(arg, fn_type.children[0], ctx)
                return fn_type.children[1]
            raise TypeMismatch(
                f"cannot apply {fn} of type {fn_type.kind.value}", None, fn_type.id
            )

        if kind is NodeKind.PAIR:
            first, second = children
            return terms.sigma(self.infer(first, ctx), terms.shift(self.infer(second, ctx), 1))

        if kind in (NodeKind.PROJ1, NodeKind.PROJ2):
            pair = children[0]
            pair_type = self.graph.node(self.nf(self.infer(pair, ctx)))
            if pair_type.kind is NodeKind.SIGMA:
                if kind is NodeKind.PROJ1:
                    return pair_type.children[0]
                return self.nf(terms.instantiate(pair_type.children[1], terms.proj1(pair)))
            if pair_type.kind is NodeKind.AND:
                return pair_type.children[0 if kind is NodeKind.PROJ1 else 1]
            raise TypeMismatch(
                f"cannot project from {pair} of type {pair_type.kind.value}", None, pair_type.id
            )

        if kind is NodeKind.ID:
            carrier, lhs, rhs = children
            self._ensure_type(carrier, ctx)
            self.check(lhs, carrier, ctx)
            self.check(rhs, carrier, ctx)
            return terms.sort()

        if kind is NodeKind.REFL:
            term = children[0]
            return terms.id(self.infer(term, ctx), term, term)

        if kind is NodeKind.CONG:
            proof = children[0]
            eq_type = self.graph.node(self.nf(self.infer(proof, ctx)))
            if eq_type.kind is not NodeKind.ID or eq_type.children[0] != terms.nat():
                raise TypeMismatch(
                    f"cong expects a proof of Id(Nat, a, b), got {eq_type.kind.value}",
                    None,
                    eq_type.id,
                )
            _, lhs, rhs = eq_type.children
            return terms.id(terms.nat(), terms.succ(lhs), terms.succ(rhs))

        if kind is NodeKind.REC:
            return self._infer_rec(children, ctx)

        raise TypeMismatch(f"no typing rule for {kind.value}")

    def _infer_rec(self, children: Tuple[NodeId, ...], ctx: Context) -> NodeId:
        terms = self.terms
        motive, base, step, target = children
        nat, sort = terms.nat(), terms.sort()

        motive_type = self.graph.node(self.nf(self.infer(motive, ctx)))
        if (
            motive_type.kind is not NodeKind.PI
            or not self.defeq(motive_type.children[0], nat)
            or not self.defeq(motive_type.children[1], sort)
        ):
            raise self._mismatch("rec motive must be a family Nat -> Sort", sort, motive_type.id)

        self.check(base, terms.app(motive, terms.zero()), ctx)
        # Π(k:ℕ). P k → P (S k)
        step_type = terms.pi(
            nat,
            terms.pi(
                terms.app(terms.shift(motive, 1), terms.var(0)),
                terms.app(terms.shift(motive, 2), terms.succ(terms.var(1))),
            ),
        )
        self.check(step, step_type, ctx)
        self.check(target, nat, ctx)
        return self.nf(terms.app(motive, target))

    # -------------------------------------------------------------------------
    # Construction
    # -------------------------------------------------------------------------

    def _record_type(self, node_id: NodeId, type_id: NodeId, ctx: Context) -> Optional[EdgeId]:
        if ctx or not self.terms.is_closed(node_id) or node_id == type_id:
            return None
        return self.graph.set_type(node_id, type_id)

    def mk(
        self,
        kind: NodeKind,
        *args: NodeId,
        payload: Any = None,
        ctx: Sequence[NodeId] = (),
    ) -> Judgment:
        """Type-check a constructor application, then add it with its typing edge.

        Raises:
            TypeMismatch: The arguments do not fit the kind's signature
            UnboundVariable: A variable escapes ``ctx``
        """
        context = tuple(ctx)
        for arg in args:
            self.graph.node(arg)
        type_id = self._infer_parts(kind, payload, tuple(args), context)
        node_id = self.graph.add_node(kind, payload, args)
        self._infer_cache[(context, node_id)] = type_id
        evidence = self._record_type(node_id, type_id, context)
        logger.debug(f"mk {kind.value} -> {node_id} : {type_id}")
        return Judgment(node_id, type_id, evidence, context)

    mk_constructor = mk

    def judge(self, node_id: NodeId, ctx: Sequence[NodeId] = ()) -> Judgment:
        """Type an existing node and record its typing edge when closed."""
        context = tuple(ctx)
        type_id = self.infer(node_id, context)
        return Judgment(node_id, type_id, self._record_type(node_id, type_id, context), context)

    def define(self, name: str, body: NodeId) -> NodeId:
        """Name a closed term.

        The DefRef node is built from ``body`` and unfolds to it by one
        delta step.

        Raises:
            DuplicateName: ``name`` is taken
            OpenTerm: ``body`` has free variables
        """
        if name in self.definitions:
            raise DuplicateName(f"definition {name!r} already exists")
        if not self.terms.is_closed(body):
            raise OpenTerm(f"definition {name!r} has free variables")
        body_type = self.infer(body)
        ref = self.graph.add_node(NodeKind.DEFREF, name, (body,))
        self.graph.add_edge("delta", (ref,), (body,))
        self._record_type(ref, body_type, ())
        self.definitions[name] = ref
        logger.info(f"Defined {name} as {ref}")
        return ref

    # -------------------------------------------------------------------------
    # Proof checking
    # -------------------------------------------------------------------------

    def check_proof(self, proof: NodeId, prop: NodeId) -> CheckResult:
        """Re-derive ``proof : prop``.

        A successful check records a ``proves`` typing edge. Fuel
        exhaustion during definitional equality reports UNKNOWN, which is
        distinct from INVALID.
        """
        self.graph.node(proof)
        self.graph.node(prop)
        try:
            self._ensure_type(prop, ())
            actual = self.infer(proof)
            if not self.defeq(actual, prop):
                return CheckResult(
                    CheckStatus.INVALID, f"proof has type {actual}, expected {prop}"
                )
        except FuelExhausted as exc:
            logger.warning(f"Proof check of {proof} ran out of fuel: {exc}")
            return CheckResult(CheckStatus.UNKNOWN, str(exc))
        except (TypeMismatch, UnboundVariable) as exc:
            return CheckResult(CheckStatus.INVALID, str(exc))
        edge = self.graph.set_type(proof, prop, color="proves")
        return CheckResult(CheckStatus.VALID, None, Judgment(proof, prop, edge))


__all__ = [
    "DEFAULT_FUEL",
    "Context",
    "CheckStatus",
    "Judgment",
    "CheckResult",
    "Kernel",
]
