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

"""S-expression surface syntax for terms.

Grammar (docs/formats.md has the full table)::

    expr   := NUMBER | zero | Nat | Sort | NAME | #INDEX | "(" form ")"
    form   := succ expr | lam binder expr | pi binder expr | sigma binder expr
            | pair expr expr | fst expr | snd expr | Id expr expr expr
            | refl expr | cong expr | rec expr expr expr expr
            | and expr expr | implies expr expr | not expr
            | atom NAME | axiom NAME expr | expr expr+
    binder := NAME | "(" NAME expr ")"

An unannotated binder has domain ``Nat``. Application is left-associated.
Parentheses are structure, not tokens: :func:`token_length` counts every
other token of the canonical rendering.
"""

from __future__ import annotations

import logging
import re
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from proofgraph.errors import ParseError
from proofgraph.hypergraph import Hypergraph, NodeId
from proofgraph.kernel.terms import Terms
from proofgraph.rules import NodeKind

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_'\-]*")

_BINDERS = {"lam": NodeKind.LAMBDA, "pi": NodeKind.PI, "sigma": NodeKind.SIGMA}

_FIXED = {
    "succ": NodeKind.SUCC,
    "pair": NodeKind.PAIR,
    "fst": NodeKind.PROJ1,
    "snd": NodeKind.PROJ2,
    "Id": NodeKind.ID,
    "refl": NodeKind.REFL,
    "cong": NodeKind.CONG,
    "rec": NodeKind.REC,
    "and": NodeKind.AND,
    "implies": NodeKind.IMPLIES,
    "not": NodeKind.NOT,
}
_KEYWORD_OF = {kind: word for word, kind in {**_FIXED, **_BINDERS}.items()}

_CONSTANTS = {"zero": NodeKind.ZERO, "Nat": NodeKind.NAT, "Sort": NodeKind.SORT}

RESERVED = frozenset(_FIXED) | frozenset(_BINDERS) | frozenset(_CONSTANTS) | {"atom", "axiom"}

# Surface keyword of each kind, for printers outside this module.
KEYWORDS: Dict[NodeKind, str] = {
    **_KEYWORD_OF,
    **{kind: word for word, kind in _CONSTANTS.items()},
    NodeKind.ATOM: "atom",
    NodeKind.AXIOM: "axiom",
}

# Largest numeral literal; each one becomes a successor tower of that height.
MAX_NUMERAL = 10_000

_BINDER_NAMES = ("x", "y", "z", "w", "u", "v")


Token = Tuple[str, int]


def tokenize(text: str) -> List[Token]:
    """Split ``text`` into (token, position) pairs, parentheses included."""
    return [(match.group(), match.start()) for match in _TOKEN_RE.finditer(text)]


# =============================================================================
# Parsing
# =============================================================================


class _Parser:
    def __init__(self, terms: Terms, text: str, definitions: Mapping[str, NodeId]):
        self.terms = terms
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.definitions = definitions

    def _peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self, what: str) -> Token:
        token = self._peek()
        if token is None:
            raise ParseError(f"unexpected end of input, expected {what}", len(self.text))
        self.pos += 1
        return token

    def _expect(self, value: str) -> None:
        token, position = self._next(repr(value))
        if token != value:
            raise ParseError(f"expected {value!r}, found {token!r}", position)

    def parse(self) -> NodeId:
        node = self._expr([])
        token = self._peek()
        if token is not None:
            raise ParseError(f"trailing input {token[0]!r}", token[1])
        return node

    def _name(self) -> str:
        token, position = self._next("a name")
        if token in "()" or not _NAME_RE.fullmatch(token) or token in RESERVED:
            raise ParseError(f"{token!r} is not a usable name", position)
        return token

    def _expr(self, names: List[str]) -> NodeId:
        token, position = self._next("an expression")
        if token == "(":
            return self._form(names, position)
        if token == ")":
            raise ParseError("unexpected ')'", position)
        return self._atom(token, position, names)

    def _atom(self, token: str, position: int, names: List[str]) -> NodeId:
        terms = self.terms
        if token.isascii() and token.isdigit():
            if len(token) > len(str(MAX_NUMERAL)) or int(token) > MAX_NUMERAL:
                raise ParseError(f"numeral {token} exceeds the limit {MAX_NUMERAL}", position)
            return terms.numeral(int(token))
        if token in _CONSTANTS:
            return terms.mk(_CONSTANTS[token])
        if token.startswith("#") and token[1:].isdigit():
            return terms.var(int(token[1:]) + len(names))
        if token in names:
            return terms.var(names.index(token))
        if token in self.definitions:
            return self.definitions[token]
        if token in RESERVED:
            raise ParseError(f"keyword {token!r} outside head position", position)
        raise ParseError(f"unbound identifier {token!r}", position)

    def _binder(self, names: List[str]) -> Tuple[str, NodeId]:
        token = self._peek()
        if token is not None and token[0] == "(":
            self.pos += 1
            name = self._name()
            domain = self._expr(names)
            self._expect(")")
            return name, domain
        return self._name(), self.terms.nat()

    def _form(self, names: List[str], start: int) -> NodeId:
        terms = self.terms
        head = self._peek()
        if head is None:
            raise ParseError("unclosed '('", start)
        word = head[0]

        if word in _BINDERS:
            self.pos += 1
            name, domain = self._binder(names)
            body = self._expr([name] + names)
            self._expect(")")
            return terms.mk(_BINDERS[word], domain, body)

        if word in _FIXED:
            self.pos += 1
            kind = _FIXED[word]
            arity = _ARITY[kind]
            args = tuple(self._expr(names) for _ in range(arity))
            self._expect(")")
            return terms.mk(kind, *args)

        if word == "atom":
            self.pos += 1
            name = self._name()
            self._expect(")")
            return terms.atom(name)

        if word == "axiom":
            self.pos += 1
            name = self._name()
            prop = self._expr(names)
            self._expect(")")
            return terms.axiom(name, prop)

        fn = self._expr(names)
        args: List[NodeId] = []
        while True:
            token = self._peek()
            if token is None:
                raise ParseError("unclosed '('", start)
            if token[0] == ")":
                self.pos += 1
                break
            args.append(self._expr(names))
        if not args:
            raise ParseError("application needs at least one argument", start)
        return terms.app(fn, *args)


_ARITY = {
    NodeKind.SUCC: 1,
    NodeKind.PAIR: 2,
    NodeKind.PROJ1: 1,
    NodeKind.PROJ2: 1,
    NodeKind.ID: 3,
    NodeKind.REFL: 1,
    NodeKind.CONG: 1,
    NodeKind.REC: 4,
    NodeKind.AND: 2,
    NodeKind.IMPLIES: 2,
    NodeKind.NOT: 1,
}


def parse(
    terms: Terms, text: str, definitions: Optional[Mapping[str, NodeId]] = None
) -> NodeId:
    """Parse ``text`` into a node of ``terms.graph``.

    Args:
        terms: Builders for the target graph
        text: Surface syntax
        definitions: Names resolvable to DefRef nodes

    Raises:
        ParseError: Annotated with the character position of the failure
    """
    parser = _Parser(terms, text, definitions or {})
    try:
        return parser.parse()
    except RecursionError:
        position = parser.tokens[parser.pos - 1][1] if parser.pos else 0
        raise ParseError("expression nested too deeply", position) from None


# =============================================================================
# Printing
# =============================================================================


def _fresh(names: Sequence[str]) -> str:
    for candidate in _BINDER_NAMES:
        if candidate not in names:
            return candidate
    return f"x{len(names)}"


def render(graph: Hypergraph, node_id: NodeId, names: Sequence[str] = ()) -> str:
    """Canonical surface form of ``node_id``."""
    terms = Terms(graph)
    return _render(graph, terms, node_id, list(names))


def _render(graph: Hypergraph, terms: Terms, node_id: NodeId, names: List[str]) -> str:
    node = graph.node(node_id)
    kind = node.kind

    if kind is NodeKind.SUCC:
        # Successor towers are folded iteratively.
        height = 0
        while node.kind is NodeKind.SUCC:
            height += 1
            node = graph.node(node.children[0])
        base = _render(graph, terms, node.id, names)
        return "(succ " * height + base + ")" * height

    if kind is NodeKind.ZERO:
        return "zero"
    if kind is NodeKind.NAT:
        return "Nat"
    if kind is NodeKind.SORT:
        return "Sort"
    if kind is NodeKind.DEFREF:
        return str(node.payload)
    if kind is NodeKind.VAR:
        index = node.payload
        if index < len(names):
            return names[index]
        return f"#{index - len(names)}"
    if kind is NodeKind.ATOM:
        return f"(atom {node.payload})"
    if kind is NodeKind.AXIOM:
        return f"(axiom {node.payload} {_render(graph, terms, node.children[0], names)})"

    if kind in (NodeKind.LAMBDA, NodeKind.PI, NodeKind.SIGMA):
        domain, body = node.children
        name = _fresh(names) if 0 in terms.free_vars(body) else "_"
        inner = _render(graph, terms, body, [name] + names)
        if graph.node(domain).kind is NodeKind.NAT:
            binder = name
        else:
            binder = f"({name} {_render(graph, terms, domain, names)})"
        return f"({_KEYWORD_OF[kind]} {binder} {inner})"

    if kind is NodeKind.APP:
        spine: List[NodeId] = []
        head = node
        while head.kind is NodeKind.APP:
            spine.append(head.children[1])
            head = graph.node(head.children[0])
        parts = [_render(graph, terms, head.id, names)]
        parts.extend(_render(graph, terms, arg, names) for arg in reversed(spine))
        return "(" + " ".join(parts) + ")"

    parts = [_KEYWORD_OF[kind]]
    parts.extend(_render(graph, terms, child, names) for child in node.children)
    return "(" + " ".join(parts) + ")"


# =============================================================================
# Token length
# =============================================================================


def token_shape(graph: Hypergraph, node_id: NodeId) -> Tuple[int, Tuple[int, ...]]:
    """Tokens a node contributes itself, and the child positions rendered.

    The rendered length of a node is its own count plus the rendered
    lengths of the listed children.
    """
    node = graph.node(node_id)
    kind = node.kind
    if kind in (NodeKind.ZERO, NodeKind.NAT, NodeKind.SORT, NodeKind.VAR, NodeKind.DEFREF):
        return 1, ()
    if kind is NodeKind.ATOM:
        return 2, ()
    if kind is NodeKind.AXIOM:
        return 2, (0,)
    if kind in (NodeKind.LAMBDA, NodeKind.PI, NodeKind.SIGMA):
        if graph.node(node.children[0]).kind is NodeKind.NAT:
            return 2, (1,)
        return 2, (0, 1)
    if kind is NodeKind.APP:
        return 0, (0, 1)
    return 1, tuple(range(len(node.children)))


def token_length(
    graph: Hypergraph, node_id: NodeId, cache: Optional[Dict[NodeId, int]] = None
) -> int:
    """Number of non-parenthesis tokens in :func:`render` of ``node_id``."""
    cache = {} if cache is None else cache
    cached = cache.get(node_id)
    if cached is not None:
        return cached
    chain: List[NodeId] = []
    node = graph.node(node_id)
    while node.kind is NodeKind.SUCC and node.id not in cache:
        chain.append(node.id)
        node = graph.node(node.children[0])
    if node.id in cache:
        total = cache[node.id]
    else:
        own, positions = token_shape(graph, node.id)
        total = own + sum(token_length(graph, node.children[p], cache) for p in positions)
        cache[node.id] = total
    for link in reversed(chain):
        total += 1
        cache[link] = total
    return total


def count_tokens(text: str) -> int:
    """Non-parenthesis tokens of a surface string."""
    return sum(1 for token, _ in tokenize(text) if token not in "()")


__all__ = [
    "RESERVED",
    "KEYWORDS",
    "MAX_NUMERAL",
    "tokenize",
    "parse",
    "render",
    "token_shape",
    "token_length",
    "count_tokens",
]
