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

"""Unit tests for graph metrics."""

from __future__ import annotations

import itertools
from graphlib import CycleError, TopologicalSorter

import pytest

from proofgraph.errors import BudgetZero, GuardExceeded, UnknownInput, Unproven
from proofgraph.hypergraph import Hypergraph, backward_closure, node_key
from proofgraph.kernel import Kernel, build_appendix_examples
from proofgraph.kernel.library import add_cell, define_arithmetic
from proofgraph.kernel.syntax import token_shape
from proofgraph.metrics import (
    NODE_COLUMNS,
    UNIT,
    LengthTable,
    complexity,
    depth,
    depths,
    efficiency,
    growth_csv,
    growth_experiment,
    hub_scores,
    length,
    min_complexity,
    neighborhood,
    nodes_csv,
)
from proofgraph.rules import EdgeClass, NodeKind


def _successor_chain(size: int):
    graph = Hypergraph()
    chain = [graph.add_node(NodeKind.ZERO)]
    for _ in range(size - 1):
        chain.append(graph.add_node(NodeKind.SUCC, inputs=(chain[-1],)))
    return graph, chain


def _brute_force_min(graph, target):
    """Cheapest acyclic derivation by enumerating every choice of incoming edge."""
    relevant, stack = [], [target]
    while stack:
        current = stack.pop()
        if current in relevant:
            continue
        relevant.append(current)
        for edge in graph.incoming(current):
            if edge.edge_class is not EdgeClass.TYPING:
                stack.extend(edge.inputs)

    def options(node_id):
        node = graph.node(node_id)
        found = [None] if graph.is_root(node_id) or node.kind is NodeKind.DEFREF else []
        return found + [
            e
            for e in graph.incoming(node_id)
            if e.edge_class is not EdgeClass.TYPING and node_id not in e.inputs
        ]

    best = None
    for assignment in itertools.product(*(options(n) for n in relevant)):
        choice = dict(zip(relevant, assignment))
        used, stack = {}, [target]
        while stack:
            current = stack.pop()
            if current in used:
                continue
            used[current] = choice[current]
            if choice[current] is not None:
                stack.extend(choice[current].inputs)
        sorter = TopologicalSorter(
            {n: (e.inputs if e is not None else ()) for n, e in used.items()}
        )
        try:
            tuple(sorter.static_order())
        except CycleError:
            continue
        cost = sum(1 for e in used.values() if e is not None)
        best = cost if best is None else min(best, cost)
    return best


def _brute_force_length(graph, target, active=frozenset()):
    """Shortest expression by expanding every recorded choice, rejecting cycles."""
    if target in active:
        return float("inf")
    active = active | {target}
    own, positions = token_shape(graph, target)
    children = graph.node(target).children
    best = own + sum(_brute_force_length(graph, children[p], active) for p in positions)
    for edge in graph.incoming(target):
        if edge.edge_class is EdgeClass.COMPUTATION:
            best = min(best, _brute_force_length(graph, edge.inputs[0], active))
    return best


class TestDepth:
    """Tests for depth."""

    def test_roots_and_successors(self):
        """Test that depth counts extension layers."""
        graph, chain = _successor_chain(4)
        assert [depth(graph, n) for n in chain] == [0, 1, 2, 3]

    def test_unknown_node(self):
        """Test that a missing node raises UnknownInput."""
        with pytest.raises(UnknownInput):
            depth(Hypergraph(), "deadbeefdeadbeef")

    def test_computation_edges_bound_reducts(self):
        """Test that a reduct sits at most one layer above its redex."""
        kernel = Kernel()
        table = build_appendix_examples(kernel)
        kernel.normalize(table["add_2_2"])
        layer = depths(kernel.graph)
        for edge in kernel.graph.edges.values():
            if edge.edge_class is EdgeClass.COMPUTATION:
                assert layer[edge.outputs[0]] <= layer[edge.inputs[0]] + 1

    def test_depth_bounded_by_min_complexity(self):
        """Test d(s) <= m(s) under the unit model."""
        kernel = Kernel()
        table = build_appendix_examples(kernel)
        for name in ("add_2_2", "double_3", "add_step", "nat_motive"):
            node = table[name]
            assert depth(kernel.graph, node) <= min_complexity(kernel.graph, node).value


class TestNeighborhood:
    """Tests for neighborhood."""

    def test_radius_zero_is_seed(self):
        """Test that N(s, 0) holds only s."""
        graph = Hypergraph()
        atom = graph.add_node(NodeKind.ATOM, payload="A")
        ball = neighborhood(graph, atom, 0)
        assert list(ball.nodes) == [atom]

    def test_negation_at_radius_one(self):
        """Test that not A appears one step out."""
        graph = Hypergraph()
        atom = graph.add_node(NodeKind.ATOM, payload="A")
        ball = neighborhood(graph, atom, 1, rules=["not-form"])
        assert node_key(NodeKind.NOT, None, (atom,)) in ball

    def test_conjunctions_match_enumeration(self):
        """Test the conjunction-only ball against a direct enumeration."""
        graph = Hypergraph()
        atoms = [graph.add_node(NodeKind.ATOM, payload=name) for name in ("A", "B")]
        ball = neighborhood(graph, atoms, 2, rules=["and-form"])

        formulas = {"A", "B"}
        for _ in range(2):
            formulas = formulas | {(x, y) for x in formulas for y in formulas}
        assert len(ball) == len(formulas) == 38

    def test_radius_monotone(self):
        """Test that N(s, d) is contained in N(s, d + 1)."""
        graph = Hypergraph()
        atom = graph.add_node(NodeKind.ATOM, payload="A")
        smaller = neighborhood(graph, atom, 1)
        larger = neighborhood(graph, atom, 2)
        assert set(smaller.nodes) <= set(larger.nodes)

    def test_zero_budget(self):
        """Test that a zero budget raises BudgetZero."""
        graph = Hypergraph()
        atom = graph.add_node(NodeKind.ATOM, payload="A")
        with pytest.raises(BudgetZero):
            neighborhood(graph, atom, 1, budget=0)


class TestGrowth:
    """Tests for growth_experiment."""

    @pytest.mark.parametrize(
        "k,layers,expected",
        [(1, 3, [1, 1, 1, 1]), (2, 3, [2, 4, 16, 256]), (3, 2, [3, 9, 81])],
    )
    def test_layer_sizes_square(self, k, layers, expected):
        """Test n_{j+1} = n_j squared."""
        assert growth_experiment(k, layers) == expected

    def test_guard(self):
        """Test that more than four layers needs an override."""
        with pytest.raises(GuardExceeded):
            growth_experiment(2, 5)

    def test_csv(self):
        """Test the growth CSV layout."""
        assert growth_csv([2, 4]) == "layer,count\n0,2\n1,4\n"


class TestComplexity:
    """Tests for complexity and min_complexity."""

    def test_closure_of_two(self):
        """Test that the closure of S(S 0) costs two edges."""
        graph, chain = _successor_chain(3)
        assert complexity(backward_closure(graph, chain[2])) == 2
        assert min_complexity(graph, chain[2]).value == 2
        assert min_complexity(graph, chain[0]).value == 0

    def test_addition_cell_closure(self):
        """Test the edge count of the inline addition cell."""
        kernel = Kernel()
        table = build_appendix_examples(kernel)
        assert complexity(backward_closure(kernel.graph, table["add_2_2"])) == 7

    def test_definition_shortens_derivation(self):
        """Test that a DefRef application is cheaper than the inline cell."""
        kernel = Kernel()
        table = build_appendix_examples(kernel)
        two = kernel.terms.numeral(2)
        applied = kernel.terms.app(table["add"], two, two)
        inline = min_complexity(kernel.graph, table["add_2_2"])
        assert min_complexity(kernel.graph, applied).value <= inline.value

    def test_matches_brute_force(self):
        """Test min_complexity against exhaustive enumeration after a reduction."""
        kernel = Kernel()
        two = kernel.terms.numeral(2)
        cell = add_cell(kernel, two, two).subject
        four = kernel.normalize(cell).node
        for target in (four, cell):
            report = min_complexity(kernel.graph, target)
            assert report.exact
            assert report.value == _brute_force_min(kernel.graph, target)

    def test_budget_monotone(self):
        """Test that larger budgets never raise the value."""
        kernel = Kernel()
        table = build_appendix_examples(kernel)
        kernel.normalize(table["double_3"])
        six = kernel.terms.numeral(6)
        values = [min_complexity(kernel.graph, six, budget=b).value for b in (1, 10, 100, 10_000)]
        assert values == sorted(values, reverse=True)

    def test_rescaling(self):
        """Test that scaling edge costs scales m."""
        graph, chain = _successor_chain(4)
        scaled = UNIT.scaled(3.0)
        assert min_complexity(graph, chain[3], scaled).value == 3 * min_complexity(
            graph, chain[3]
        ).value

    def test_deterministic_witness(self):
        """Test that ties resolve to the same witness every time."""
        kernel = Kernel()
        table = build_appendix_examples(kernel)
        first = min_complexity(kernel.graph, table["add_2_2"])
        second = min_complexity(kernel.graph, table["add_2_2"])
        assert first.witness.structurally_equal(second.witness)

    def test_zero_budget(self):
        """Test that a zero budget raises BudgetZero."""
        graph, chain = _successor_chain(2)
        with pytest.raises(BudgetZero):
            min_complexity(graph, chain[1], budget=0)


class TestLength:
    """Tests for length."""

    def test_structural_lengths(self):
        """Test l(0) = 1 and l(4) = 5 without reductions."""
        kernel = Kernel()
        t = kernel.terms
        assert length(kernel.graph, t.zero()).value == 1
        assert length(kernel.graph, t.numeral(4)).value == 5

    def test_definition_gives_shorter_expression(self):
        """Test that (double 2) becomes a shorter expression for 4."""
        kernel = Kernel()
        t = kernel.terms
        four = t.numeral(4)
        before = length(kernel.graph, four).value
        double = define_arithmetic(kernel)["double"]
        kernel.normalize(t.app(double, t.numeral(2)))
        after = length(kernel.graph, four)

        assert before == 5
        assert after.value == 4
        assert after.exact
        assert any(e.color == "delta" for e in after.witness.edges.values())

    def test_reducts_never_longer_than_redexes(self):
        """Test l(n) <= l(m) across every recorded Computation edge."""
        kernel = Kernel()
        table = build_appendix_examples(kernel)
        kernel.normalize(table["double_3"])
        lengths = LengthTable(kernel.graph)
        for edge in list(kernel.graph.edges.values()):
            if edge.edge_class is EdgeClass.COMPUTATION:
                assert lengths.value(edge.outputs[0]) <= lengths.value(edge.inputs[0])

    @pytest.mark.parametrize("build", ["double", "add_cell"])
    def test_matches_brute_force(self, build):
        """Test length against direct expansion on every term of a reduction trace."""
        kernel = Kernel()
        t = kernel.terms
        if build == "double":
            start = t.app(define_arithmetic(kernel)["double"], t.numeral(2))
        else:
            start = add_cell(kernel, t.numeral(2), t.numeral(2)).subject
        kernel.normalize(start)
        lengths = LengthTable(kernel.graph)
        trace = {start} | {
            edge.outputs[0]
            for edge in kernel.graph.edges.values()
            if edge.edge_class is EdgeClass.COMPUTATION
        }
        for node in sorted(trace):
            assert lengths.value(node) == _brute_force_length(kernel.graph, node)
        assert length(kernel.graph, t.numeral(4)).value == _brute_force_length(
            kernel.graph, t.numeral(4)
        )


class TestEfficiency:
    """Tests for efficiency."""

    @pytest.fixture(scope="class")
    def setup(self):
        kernel = Kernel()
        table = build_appendix_examples(kernel)
        return kernel, table

    def test_axiom_at_floor(self):
        """Test that an axiom proves its statement at efficiency 1."""
        kernel = Kernel()
        t = kernel.terms
        prop = t.conj(t.atom("P"), t.atom("Q"))
        proof = t.axiom("ax", prop)
        assert kernel.check_proof(proof, prop).valid
        assert efficiency(kernel, prop).value == pytest.approx(1.0)

    def test_induction_costs_more_than_computation(self, setup):
        """Test that the inductive proof is less efficient than the definitional one."""
        kernel, table = setup
        hard = efficiency(kernel, table["succ_add"])
        easy = efficiency(kernel, table["add_succ"])
        assert hard.value > easy.value >= 1.0

    def test_edge_numerator_rescales(self, setup):
        """Test that the edge-cost numerator scales with the model."""
        kernel, table = setup
        unit = efficiency(kernel, table["add_succ"], model=UNIT)
        tripled = efficiency(kernel, table["add_succ"], model=UNIT.scaled(3.0))
        assert tripled.value == pytest.approx(3 * unit.value)

    def test_unproven(self):
        """Test that a statement without proofs raises Unproven."""
        kernel = Kernel()
        t = kernel.terms
        with pytest.raises(Unproven):
            efficiency(kernel, t.id(t.nat(), t.zero(), t.numeral(1)))

    @pytest.fixture
    def modus_ponens(self):
        kernel = Kernel()
        t = kernel.terms
        p, q = t.atom("P"), t.atom("Q")
        ax_pq = t.axiom("ax_pq", t.implies(p, q))
        ax_p = t.axiom("ax_p", p)
        proof = t.app(ax_pq, ax_p)
        assert kernel.check_proof(proof, q).valid
        return kernel, q, proof, [proof, ax_pq, ax_p]

    @pytest.fixture
    def computed_equation(self):
        kernel = Kernel()
        t = kernel.terms
        cell = t.app(define_arithmetic(kernel)["add"], t.numeral(2), t.numeral(2))
        prop = t.id(t.nat(), cell, t.numeral(4))
        proof = t.refl(cell)
        assert kernel.check_proof(proof, prop).valid
        return kernel, prop, proof, [proof]

    @pytest.mark.parametrize("case", ["modus_ponens", "computed_equation"])
    def test_statement_sum_matches_brute_force(self, case, request):
        """Test the default quotient against directly expanded statement lengths."""
        kernel, prop, proof, statements = request.getfixturevalue(case)
        graph = kernel.graph
        numerator = sum(
            _brute_force_length(graph, kernel.nf(kernel.infer(s))) for s in statements
        )
        report = efficiency(kernel, prop)
        assert report.proof == proof
        assert report.numerator == numerator
        assert report.value == pytest.approx(numerator / _brute_force_length(graph, prop))

    @pytest.mark.parametrize("case", ["modus_ponens", "computed_equation"])
    def test_edge_quotient_matches_brute_force(self, case, request):
        """Test the unit-cost quotient against exhaustive derivation and length search."""
        kernel, prop, proof, _ = request.getfixturevalue(case)
        graph = kernel.graph
        report = efficiency(kernel, prop, model=UNIT)
        expected = _brute_force_min(graph, proof) / _brute_force_length(graph, prop)
        assert report.value == pytest.approx(expected)

    def test_modus_ponens_quotient(self, modus_ponens):
        """Test the mp quotient: statements P, P -> Q and Q over the length of Q."""
        kernel, q, _, _ = modus_ponens
        t = kernel.terms
        p_implies_q = _brute_force_length(kernel.graph, t.implies(t.atom("P"), q))
        report = efficiency(kernel, q)
        assert report.numerator == 2 + 2 + p_implies_q
        assert report.value == pytest.approx((4 + p_implies_q) / 2)


class TestHubs:
    """Tests for hub_scores."""

    def test_middle_of_chain_is_hub(self):
        """Test that the middle of a five-node path maximizes betweenness."""
        graph, chain = _successor_chain(5)
        scores = hub_scores(graph)
        middle = scores[chain[2]].betweenness
        assert all(middle > scores[n].betweenness for n in chain if n != chain[2])

    def test_isolated_root(self):
        """Test that a lone root scores zero everywhere."""
        graph = Hypergraph()
        zero = graph.add_node(NodeKind.ZERO)
        score = hub_scores(graph)[zero]
        assert (score.out_degree, score.in_degree, score.betweenness) == (0, 0, 0.0)

    def test_definition_used_widely(self):
        """Test that a definition applied five times has out-degree at least 5."""
        kernel = Kernel()
        add = define_arithmetic(kernel)["add"]
        t = kernel.terms
        for value in range(5):
            t.app(add, t.numeral(value))
        assert hub_scores(kernel.graph, samples=8, seed=3)[add].out_degree >= 5

    def test_sampling_is_seeded(self):
        """Test that the same seed gives the same estimate."""
        graph, _ = _successor_chain(6)
        assert hub_scores(graph, samples=4, seed=7) == hub_scores(graph, samples=4, seed=7)


class TestNodesCsv:
    """Tests for nodes_csv."""

    def test_header_only_when_empty(self):
        """Test that no nodes gives only the header."""
        assert nodes_csv(Kernel(), nodes=[]) == ",".join(NODE_COLUMNS) + "\n"

    def test_one_row_per_node(self):
        """Test the row count."""
        kernel = Kernel()
        kernel.terms.numeral(2)
        lines = nodes_csv(kernel).strip().split("\n")
        assert len(lines) == len(kernel.graph) + 1
