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

"""Unit tests for graph export and import."""

from __future__ import annotations

import json

import pytest

from proofgraph.errors import LoadError
from proofgraph.hypergraph import Hypergraph
from proofgraph.rules import NodeKind
from proofgraph.serialization import export, graph_to_dict, import_json
from tests.golden_files import GOLDEN_DIR, assert_golden


class TestJsonExport:
    """Tests for the JSON format."""

    @pytest.fixture
    def appendix_graph(self):
        from proofgraph.kernel import Kernel, build_appendix_examples

        kernel = Kernel()
        build_appendix_examples(kernel)
        two = kernel.terms.numeral(2)
        kernel.normalize(kernel.terms.app(kernel.definitions["add"], two, two))
        return kernel.graph

    def test_round_trip_is_structural_identity(self, appendix_graph):
        """Test that import inverts export."""
        loaded = import_json(export(appendix_graph, "json"))
        assert loaded.structurally_equal(appendix_graph)
        assert loaded.roots == appendix_graph.roots

    def test_export_is_deterministic(self, appendix_graph):
        """Test that exporting twice gives identical bytes."""
        assert export(appendix_graph, "json") == export(appendix_graph, "json")

    def test_schema_fields(self):
        """Test the documented top-level and per-item keys."""
        graph = Hypergraph()
        zero = graph.add_node(NodeKind.ZERO)
        graph.add_node(NodeKind.SUCC, inputs=(zero,))
        data = graph_to_dict(graph)

        assert set(data) == {"roots", "nodes", "edges"}
        assert set(data["nodes"][0]) == {"id", "kind", "payload", "type", "children"}
        assert set(data["edges"][0]) == {"id", "color", "class", "inputs", "outputs"}
        assert data["edges"][0]["class"] == "Introduction"

    def test_tampered_id_rejected(self):
        """Test that an id not matching its content fails to load."""
        graph = Hypergraph()
        graph.add_node(NodeKind.ZERO)
        data = graph_to_dict(graph)
        data["nodes"][0]["id"] = "0000000000000000"
        data["roots"] = ["0000000000000000"]
        with pytest.raises(LoadError):
            import_json(json.dumps(data).encode("utf-8"))

    def test_garbage_rejected(self):
        """Test that non-JSON input raises LoadError."""
        with pytest.raises(LoadError):
            import_json(b"not json")

    def test_unknown_format(self):
        """Test that unknown formats raise ValueError."""
        with pytest.raises(ValueError):
            export(Hypergraph(), "svg")

    @pytest.mark.parametrize(
        "name", ["add_2_2", "double_3", "dist", "add_succ_proof", "succ_add_proof"]
    )
    def test_golden_files(self, name):
        """Test exports of the reference constructions against their golden files."""
        from proofgraph.hypergraph import backward_closure
        from proofgraph.kernel import Kernel, build_appendix_examples

        kernel = Kernel()
        table = build_appendix_examples(kernel)
        closure = backward_closure(kernel.graph, table[name])
        assert_golden(GOLDEN_DIR / f"{name}.json", export(closure, "json"))


class TestDotExport:
    """Tests for the DOT format."""

    def test_one_point_vertex_per_edge(self):
        """Test that each hyperedge becomes an auxiliary point vertex."""
        graph = Hypergraph()
        zero = graph.add_node(NodeKind.ZERO)
        one = graph.add_node(NodeKind.SUCC, inputs=(zero,))
        graph.add_node(NodeKind.SUCC, inputs=(one,))

        text = export(graph, "dot").decode("utf-8")
        assert text.startswith("digraph proofgraph {")
        assert text.count("shape=point") == 2
        assert text.count("shape=box") == 1

    def test_typing_edges_dotted(self):
        """Test that typing edges are drawn dotted."""
        graph = Hypergraph()
        nat = graph.add_node(NodeKind.NAT)
        zero = graph.add_node(NodeKind.ZERO)
        graph.set_type(zero, nat)
        assert "style=dotted" in export(graph, "dot").decode("utf-8")
