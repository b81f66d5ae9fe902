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

"""Unit tests for the hypergraph store, closure and extension."""

from __future__ import annotations

import pytest

from proofgraph.errors import (
    ArityMismatch,
    BudgetZero,
    EXIT_USAGE,
    CycleDetected,
    FrozenGraph,
    InvalidPayload,
    UnknownInput,
    UnknownRule,
)
from proofgraph.hypergraph import Hypergraph, backward_closure, extend, new_nodes
from proofgraph.rules import EdgeClass, NodeKind, get_catalogue, reset_catalogue


class TestRuleCatalogue:
    """Tests for the YAML rule catalogue."""

    def test_rec_has_four_inputs(self):
        """Test that the recursor rule takes motive, base, step and target."""
        rule = get_catalogue().rule_for(NodeKind.REC)
        assert rule.arity == 4
        assert rule.edge_class is EdgeClass.ELIMINATION

    def test_binders_declared_for_lambda(self):
        """Test that the lambda body sits under a binder."""
        assert get_catalogue().rule_for(NodeKind.LAMBDA).binders == (1,)

    def test_connective_rules_are_unary(self):
        """Test that computation and typing colors have arity one."""
        catalogue = get_catalogue()
        for color in ("beta", "iota", "delta", "proj", "rewrite", "type-of", "proves"):
            assert catalogue.rule(color).arity == 1

    def test_unknown_color_raises(self):
        """Test that unknown colors are a usage error that is still a KeyError."""
        with pytest.raises(UnknownRule) as info:
            get_catalogue().rule("no-such-rule")
        assert isinstance(info.value, KeyError)
        assert info.value.exit_code == EXIT_USAGE
        assert str(info.value) == "unknown rule color 'no-such-rule'"

    def test_reset_reloads(self):
        """Test that reset_catalogue forces a fresh load."""
        first = get_catalogue()
        reset_catalogue()
        assert get_catalogue() is not first


class TestHypergraphStore:
    """Tests for node and edge insertion."""

    @pytest.fixture
    def graph(self):
        return Hypergraph()

    def test_hash_consing(self, graph):
        """Test that S(0) added twice yields one node and one edge."""
        zero = graph.add_node(NodeKind.ZERO)
        first = graph.add_node(NodeKind.SUCC, inputs=(zero,))
        second = graph.add_node(NodeKind.SUCC, inputs=(zero,))

        assert first == second
        assert len(graph) == 2
        assert len(graph.edges) == 1

    def test_roots_have_no_edges(self, graph):
        """Test that nullary constructions become roots."""
        zero = graph.add_node(NodeKind.ZERO)
        atom = graph.add_node(NodeKind.ATOM, payload="A")

        assert graph.roots == (zero, atom)
        assert graph.incoming(zero) == ()

    def test_arity_mismatch(self, graph):
        """Test that Succ with two inputs is rejected."""
        zero = graph.add_node(NodeKind.ZERO)
        with pytest.raises(ArityMismatch):
            graph.add_node(NodeKind.SUCC, inputs=(zero, zero))

    def test_unknown_input(self, graph):
        """Test that inputs must already exist."""
        with pytest.raises(UnknownInput):
            graph.add_node(NodeKind.SUCC, inputs=("missing",))

    def test_payload_checked(self, graph):
        """Test that a Var needs a non-negative index."""
        with pytest.raises(InvalidPayload) as info:
            graph.add_node(NodeKind.VAR, payload=-1)
        assert isinstance(info.value, ValueError)
        assert info.value.exit_code == EXIT_USAGE

    def test_and_of_same_atom_is_one_node(self, graph):
        """Test that A ∧ A is hash-consed to a single node."""
        atom = graph.add_node(NodeKind.ATOM, payload="A")
        conj = graph.add_node(NodeKind.AND, inputs=(atom, atom))
        assert graph.add_node(NodeKind.AND, inputs=(atom, atom)) == conj
        assert graph.node(conj).children == (atom, atom)

    def test_alternative_construction_edge(self, graph):
        """Test that a second construction of a node can be recorded."""
        zero = graph.add_node(NodeKind.ZERO)
        one = graph.add_node(NodeKind.SUCC, inputs=(zero,))
        two = graph.add_node(NodeKind.SUCC, inputs=(one,))
        edge = graph.add_edge("succ-intro", (zero,), (two,))

        assert edge in graph.edges
        assert len(graph.incoming(two)) == 2

    def test_cycle_rejected(self, graph):
        """Test that a construction edge may not make a node its own ancestor."""
        zero = graph.add_node(NodeKind.ZERO)
        one = graph.add_node(NodeKind.SUCC, inputs=(zero,))
        two = graph.add_node(NodeKind.SUCC, inputs=(one,))
        with pytest.raises(CycleDetected):
            graph.add_edge("succ-intro", (two,), (one,))

    def test_root_cannot_be_constructed(self, graph):
        """Test that construction edges never output a root."""
        zero = graph.add_node(NodeKind.ZERO)
        one = graph.add_node(NodeKind.SUCC, inputs=(zero,))
        with pytest.raises(CycleDetected):
            graph.add_edge("succ-intro", (one,), (zero,))

    def test_computation_edges_may_point_back(self, graph):
        """Test that computation edges are outside the acyclicity check."""
        zero = graph.add_node(NodeKind.ZERO)
        one = graph.add_node(NodeKind.SUCC, inputs=(zero,))
        graph.add_edge("rewrite", (one,), (zero,))
        graph.add_edge("rewrite", (zero,), (one,))
        assert len(graph.edges) == 3

    def test_set_type_records_primary_type(self, graph):
        """Test that the first type-of edge becomes the node's type."""
        nat = graph.add_node(NodeKind.NAT)
        zero = graph.add_node(NodeKind.ZERO)
        graph.set_type(zero, nat)
        assert graph.node(zero).type == nat
        assert graph.proofs_of(nat) == [zero]

    def test_topological_order(self, graph):
        """Test that inputs precede outputs."""
        zero = graph.add_node(NodeKind.ZERO)
        one = graph.add_node(NodeKind.SUCC, inputs=(zero,))
        two = graph.add_node(NodeKind.SUCC, inputs=(one,))
        order = graph.topological_order()
        assert order.index(zero) < order.index(one) < order.index(two)


class TestSnapshots:
    """Tests for snapshot immutability and copies."""

    def test_snapshot_is_frozen(self):
        """Test that a snapshot refuses writes."""
        graph = Hypergraph()
        graph.add_node(NodeKind.ZERO)
        frozen = graph.snapshot()
        with pytest.raises(FrozenGraph):
            frozen.add_node(NodeKind.NAT)

    def test_snapshot_tolerates_existing_nodes(self):
        """Test that re-adding an existing node on a snapshot is a lookup."""
        graph = Hypergraph()
        zero = graph.add_node(NodeKind.ZERO)
        assert graph.snapshot().add_node(NodeKind.ZERO) == zero

    def test_copy_is_independent(self):
        """Test that writes to a copy leave the original alone."""
        graph = Hypergraph()
        zero = graph.add_node(NodeKind.ZERO)
        other = graph.copy()
        other.add_node(NodeKind.SUCC, inputs=(zero,))
        assert len(graph) == 1
        assert len(other) == 2


class TestBackwardClosure:
    """Tests for backward_closure."""

    def test_closure_of_root_is_single_node(self):
        """Test that a root's closure has no edges."""
        graph = Hypergraph()
        zero = graph.add_node(NodeKind.ZERO)
        closure = backward_closure(graph, zero)
        assert list(closure.nodes) == [zero]
        assert len(closure.edges) == 0

    def test_closure_of_two(self):
        """Test that SS0 is built from 0 by two edges."""
        graph = Hypergraph()
        zero = graph.add_node(NodeKind.ZERO)
        one = graph.add_node(NodeKind.SUCC, inputs=(zero,))
        two = graph.add_node(NodeKind.SUCC, inputs=(one,))
        graph.add_node(NodeKind.NAT)

        closure = backward_closure(graph, two)
        assert set(closure.nodes) == {zero, one, two}
        assert len(closure.edges) == 2
        assert closure.roots == (zero,)

    def test_closure_stops_at_predicate(self):
        """Test that stop nodes are kept as leaves."""
        graph = Hypergraph()
        zero = graph.add_node(NodeKind.ZERO)
        one = graph.add_node(NodeKind.SUCC, inputs=(zero,))
        two = graph.add_node(NodeKind.SUCC, inputs=(one,))

        closure = backward_closure(graph, two, stop=lambda node: node.id == one)
        assert set(closure.nodes) == {one, two}
        assert closure.roots == (one,)

    def test_closure_of_unknown_node(self):
        """Test that unknown nodes raise."""
        with pytest.raises(UnknownInput):
            backward_closure(Hypergraph(), "missing")


class TestExtend:
    """Tests for the extension operator."""

    @pytest.fixture
    def atoms(self):
        graph = Hypergraph()
        ids = [graph.add_node(NodeKind.ATOM, payload=name) for name in ("A", "B")]
        return graph, ids

    def test_budget_zero(self, atoms):
        """Test that a non-positive budget raises."""
        graph, _ = atoms
        with pytest.raises(BudgetZero):
            extend(graph, ["and-form"], 0)

    def test_and_extension_counts(self, atoms):
        """Test that two atoms produce four ordered conjunctions."""
        graph, _ = atoms
        bigger = extend(graph, ["and-form"], 100)
        assert len(new_nodes(graph, bigger)) == 4
        assert len(graph) == 2

    def test_result_is_frozen(self, atoms):
        """Test that extension returns a snapshot."""
        graph, _ = atoms
        assert extend(graph, ["not-form"], 10).frozen

    def test_budget_caps_output(self, atoms):
        """Test that the budget bounds the number of new nodes."""
        graph, _ = atoms
        bigger = extend(graph, ["and-form", "implies-form", "not-form"], 3)
        assert len(new_nodes(graph, bigger)) == 3

    def test_frontier_restricts_inputs(self, atoms):
        """Test that only frontier nodes are combined."""
        graph, (a, _) = atoms
        bigger = extend(graph, ["and-form"], 100, frontier=[a])
        assert new_nodes(graph, bigger) == [bigger.find(NodeKind.AND, inputs=(a, a))]

    def test_sorts_filter_inputs(self):
        """Test that succ only applies to numerals, not atoms."""
        graph = Hypergraph()
        graph.add_node(NodeKind.ATOM, payload="A")
        zero = graph.add_node(NodeKind.ZERO)
        bigger = extend(graph, ["succ-intro"], 10)
        added = new_nodes(graph, bigger)
        assert len(added) == 1
        assert bigger.node(added[0]).children == (zero,)
