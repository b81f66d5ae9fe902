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

"""Reference constructions: Peano arithmetic and Π/Σ distributivity.

Every construction here is built through the kernel, so each one arrives
with a verified typing judgment.
"""

from __future__ import annotations

import logging
from typing import Dict, Tuple

from proofgraph.errors import ProofGraphError
from proofgraph.hypergraph import NodeId
from proofgraph.kernel.checker import Judgment, Kernel
from proofgraph.rules import NodeKind

logger = logging.getLogger(__name__)


# =============================================================================
# Arithmetic
# =============================================================================


def const_nat_motive(kernel: Kernel) -> NodeId:
    """``λ_:ℕ. ℕ``"""
    terms = kernel.terms
    return kernel.mk(NodeKind.LAMBDA, terms.nat(), terms.nat()).subject


def add_step(kernel: Kernel) -> NodeId:
    """``λk.λv. S v``"""
    terms = kernel.terms
    nat = terms.nat()
    inner = kernel.mk(NodeKind.LAMBDA, nat, terms.succ(terms.var(0)), ctx=(nat,)).subject
    return kernel.mk(NodeKind.LAMBDA, nat, inner).subject


def double_step(kernel: Kernel) -> NodeId:
    """``λk.λy. S(S y)``; the index k is unused."""
    terms = kernel.terms
    nat = terms.nat()
    body = terms.succ(terms.succ(terms.var(0)))
    inner = kernel.mk(NodeKind.LAMBDA, nat, body, ctx=(nat,)).subject
    return kernel.mk(NodeKind.LAMBDA, nat, inner).subject


def add_cell(kernel: Kernel, m: NodeId, n: NodeId) -> Judgment:
    """Inline addition ``Rec(λ_.ℕ, m, λk.λv.S v, n)``, recursing on ``n``."""
    return kernel.mk(NodeKind.REC, const_nat_motive(kernel), m, add_step(kernel), n)


def double_cell(kernel: Kernel, n: NodeId) -> Judgment:
    """Inline doubling ``Rec(λ_.ℕ, 0, λk.λy.S(S y), n)``."""
    zero = kernel.terms.zero()
    return kernel.mk(NodeKind.REC, const_nat_motive(kernel), zero, double_step(kernel), n)


def _binary(kernel: Kernel, rec_in_context: NodeId) -> NodeId:
    nat = kernel.terms.nat()
    inner = kernel.mk(NodeKind.LAMBDA, nat, rec_in_context, ctx=(nat,)).subject
    return kernel.mk(NodeKind.LAMBDA, nat, inner).subject


def add_body(kernel: Kernel) -> NodeId:
    """``λm.λn. Rec(λ_.ℕ, m, λk.λv.S v, n)``"""
    terms = kernel.terms
    nat = terms.nat()
    rec = kernel.mk(
        NodeKind.REC,
        const_nat_motive(kernel),
        terms.var(1),
        add_step(kernel),
        terms.var(0),
        ctx=(nat, nat),
    ).subject
    return _binary(kernel, rec)


def double_body(kernel: Kernel) -> NodeId:
    """``λn. Rec(λ_.ℕ, 0, λk.λy.S(S y), n)``"""
    terms = kernel.terms
    nat = terms.nat()
    rec = kernel.mk(
        NodeKind.REC,
        const_nat_motive(kernel),
        terms.zero(),
        double_step(kernel),
        terms.var(0),
        ctx=(nat,),
    ).subject
    return kernel.mk(NodeKind.LAMBDA, nat, rec).subject


def mult_body(kernel: Kernel, add: NodeId) -> NodeId:
    """``λx.λn. Rec(λ_.ℕ, 0, λk.λv. add x v, n)``"""
    terms = kernel.terms
    nat = terms.nat()
    # Under x, n, k, v: v = #0, x = #3.
    step_body = terms.app(add, terms.var(3), terms.var(0))
    ctx = (nat, nat)
    inner = kernel.mk(NodeKind.LAMBDA, nat, step_body, ctx=(nat,) + ctx).subject
    step = kernel.mk(NodeKind.LAMBDA, nat, inner, ctx=ctx).subject
    rec = kernel.mk(
        NodeKind.REC, const_nat_motive(kernel), terms.zero(), step, terms.var(0), ctx=ctx
    ).subject
    return _binary(kernel, rec)


def ensure_definition(kernel: Kernel, name: str, body: NodeId) -> NodeId:
    """Define ``name`` unless the kernel already has it."""
    existing = kernel.definitions.get(name)
    if existing is not None:
        return existing
    return kernel.define(name, body)


def define_arithmetic(kernel: Kernel) -> Dict[str, NodeId]:
    """Define ``add``, ``double`` and ``mult``."""
    add = ensure_definition(kernel, "add", add_body(kernel))
    double = ensure_definition(kernel, "double", double_body(kernel))
    mult = ensure_definition(kernel, "mult", mult_body(kernel, add))
    return {"add": add, "double": double, "mult": mult}


# =============================================================================
# Propositions about addition
# =============================================================================


def nat_eq(kernel: Kernel, lhs: NodeId, rhs: NodeId) -> NodeId:
    """``Id(ℕ, lhs, rhs)``"""
    return kernel.terms.id(kernel.terms.nat(), lhs, rhs)


def forall_nat(kernel: Kernel, body: NodeId, count: int = 1) -> NodeId:
    """Wrap ``body`` in ``count`` binders over ℕ."""
    node = body
    for _ in range(count):
        node = kernel.terms.pi(kernel.terms.nat(), node)
    return node


def add_succ_statement(kernel: Kernel, add: NodeId) -> NodeId:
    """``∀a b. a + S b = S(a + b)``; holds by computation alone."""
    t = kernel.terms
    a, b = t.var(1), t.var(0)
    return forall_nat(kernel, nat_eq(kernel, t.app(add, a, t.succ(b)), t.succ(t.app(add, a, b))), 2)


def succ_add_statement(kernel: Kernel, add: NodeId) -> NodeId:
    """``∀a b. S a + b = S(a + b)``; needs induction on b."""
    t = kernel.terms
    a, b = t.var(1), t.var(0)
    return forall_nat(kernel, nat_eq(kernel, t.app(add, t.succ(a), b), t.succ(t.app(add, a, b))), 2)


def add_succ_proof(kernel: Kernel, add: NodeId) -> NodeId:
    """``λa.λb. refl(S(a + b))``"""
    t = kernel.terms
    nat = t.nat()
    ctx = (nat, nat)
    refl = kernel.mk(NodeKind.REFL, t.succ(t.app(add, t.var(1), t.var(0))), ctx=ctx).subject
    return _binary(kernel, refl)


def succ_add_proof(kernel: Kernel, add: NodeId) -> NodeId:
    """Induction on b: base ``refl(S a)``, step ``λk.λh. cong h``."""
    t = kernel.terms
    nat = t.nat()
    ctx = (nat, nat)  # b, a
    # motive λy. S a + y = S(a + y), under y: a = #2
    family = nat_eq(
        kernel, t.app(add, t.succ(t.var(2)), t.var(0)), t.succ(t.app(add, t.var(2), t.var(0)))
    )
    motive = kernel.mk(NodeKind.LAMBDA, nat, family, ctx=ctx).subject
    base = kernel.mk(NodeKind.REFL, t.succ(t.var(1)), ctx=ctx).subject
    hypothesis = t.app(t.shift(motive, 1), t.var(0))
    step_ctx = (nat,) + ctx
    cong = kernel.mk(NodeKind.CONG, t.var(0), ctx=(hypothesis,) + step_ctx).subject
    step = kernel.mk(
        NodeKind.LAMBDA,
        nat,
        kernel.mk(NodeKind.LAMBDA, hypothesis, cong, ctx=step_ctx).subject,
        ctx=ctx,
    ).subject
    rec = kernel.mk(NodeKind.REC, motive, base, step, t.var(0), ctx=ctx).subject
    return _binary(kernel, rec)


# =============================================================================
# Π over Σ distributivity
# =============================================================================


def distributivity(kernel: Kernel) -> Dict[str, NodeId]:
    """``(Π x:A. P x × Q x) → (Π x:A. P x) × (Π x:A. Q x)``

    Built in six steps: hypothesis f, context extension by x : A,
    application f x, the two projections, two lambda abstractions over x,
    and the final pair. Returns the closed term, its stated type, and the
    pair with its components (open, in the context A, P, Q, f).
    """
    t = kernel.terms
    sort = t.sort()
    family_a = t.pi(t.var(0), sort)  # under A
    family_b = t.pi(t.var(1), sort)  # under P, A
    # Π x:A. Σ _:P x. Q x, under Q, P, A
    hyp_type = t.pi(t.var(2), t.sigma(t.app(t.var(2), t.var(0)), t.app(t.var(2), t.var(1))))
    ctx_f = (hyp_type, family_b, family_a, sort)

    # Steps 1-4 under x : A (A = #3 in ctx_f)
    ctx_x = (t.var(3),) + ctx_f
    applied = kernel.mk(NodeKind.APP, t.var(1), t.var(0), ctx=ctx_x).subject
    first = kernel.mk(NodeKind.PROJ1, applied, ctx=ctx_x).subject
    second = kernel.mk(NodeKind.PROJ2, applied, ctx=ctx_x).subject
    # Step 5
    g = kernel.mk(NodeKind.LAMBDA, t.var(3), first, ctx=ctx_f).subject
    h = kernel.mk(NodeKind.LAMBDA, t.var(3), second, ctx=ctx_f).subject
    # Step 6
    pair = kernel.mk(NodeKind.PAIR, g, h, ctx=ctx_f).subject

    term = pair
    for depth, domain in enumerate(ctx_f):
        term = kernel.mk(NodeKind.LAMBDA, domain, term, ctx=ctx_f[depth + 1 :]).subject

    consequent = t.sigma(
        t.pi(t.var(3), t.app(t.var(3), t.var(0))),
        t.pi(t.var(4), t.app(t.var(3), t.var(0))),
    )
    stated = consequent
    for domain in ctx_f:
        stated = t.pi(domain, stated)

    judgment = kernel.judge(term)
    logger.debug(f"Distributivity term {term} : {judgment.type}")
    return {"dist": term, "dist_type": stated, "dist_pair": pair, "dist_g": g, "dist_h": h}


# =============================================================================
# Assembled table
# =============================================================================


def proven_pair(kernel: Kernel, name: str, proof: NodeId, prop: NodeId) -> Tuple[NodeId, NodeId]:
    result = kernel.check_proof(proof, prop)
    if not result.valid:
        raise ProofGraphError(f"reference proof {name} failed: {result.failure}")
    return prop, proof


def build_appendix_examples(kernel: Kernel) -> Dict[str, NodeId]:
    """Construct the reference table.

    Keys: ``add``, ``double``, ``mult`` (DefRefs); ``nat_motive``,
    ``add_step``, ``double_step``; ``add_2_2`` (inline addition cell) and
    ``double_3``; ``dist`` with ``dist_type``, ``dist_pair``, ``dist_g``,
    ``dist_h``; ``add_succ``/``add_succ_proof`` and
    ``succ_add``/``succ_add_proof``.
    """
    t = kernel.terms
    table: Dict[str, NodeId] = dict(define_arithmetic(kernel))
    table["nat_motive"] = const_nat_motive(kernel)
    table["add_step"] = add_step(kernel)
    table["double_step"] = double_step(kernel)
    table["add_2_2"] = add_cell(kernel, t.numeral(2), t.numeral(2)).subject
    table["double_3"] = double_cell(kernel, t.numeral(3)).subject
    table.update(distributivity(kernel))

    add = table["add"]
    for name, statement, proof in (
        ("add_succ", add_succ_statement, add_succ_proof),
        ("succ_add", succ_add_statement, succ_add_proof),
    ):
        prop, prf = proven_pair(kernel, name, proof(kernel, add), statement(kernel, add))
        table[name] = prop
        table[f"{name}_proof"] = prf
    logger.info(f"Built {len(table)} reference constructions")
    return table


__all__ = [
    "const_nat_motive",
    "add_step",
    "double_step",
    "add_cell",
    "double_cell",
    "add_body",
    "double_body",
    "mult_body",
    "ensure_definition",
    "define_arithmetic",
    "nat_eq",
    "forall_nat",
    "add_succ_statement",
    "succ_add_statement",
    "add_succ_proof",
    "succ_add_proof",
    "distributivity",
    "proven_pair",
    "build_appendix_examples",
]
