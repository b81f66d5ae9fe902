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

"""Graph export (JSON, DOT) and JSON import.

Both formats are documented in docs/formats.md.
"""

from __future__ import annotations

import json
import logging
from typing import Any, Dict, List

from proofgraph.errors import LoadError
from proofgraph.hypergraph import Hypergraph, Node, node_key
from proofgraph.rules import EdgeClass, NodeKind

logger = logging.getLogger(__name__)

FORMATS = ("json", "dot")


def node_label(node: Node) -> str:
    """Human-readable label: kind plus payload."""
    if node.payload is None:
        return node.kind.value
    if node.kind is NodeKind.VAR:
        return f"{node.kind.value} #{node.payload}"
    return f"{node.kind.value} {node.payload}"


def graph_to_dict(graph: Hypergraph) -> Dict[str, Any]:
    """JSON-ready dictionary of a graph."""
    return {
        "roots": list(graph.roots),
        "nodes": [
            {
                "id": node.id,
                "kind": node.kind.value,
                "payload": node.payload,
                "type": node.type,
                "children": list(node.children),
            }
            for node in graph.nodes.values()
        ],
        "edges": [
            {
                "id": edge.id,
                "color": edge.color,
                "class": edge.edge_class.value,
                "inputs": list(edge.inputs),
                "outputs": list(edge.outputs),
            }
            for edge in graph.edges.values()
        ],
    }


def graph_from_dict(data: Dict[str, Any]) -> Hypergraph:
    """Rebuild a graph from :func:`graph_to_dict` output.

    Raises:
        LoadError: Missing fields, unknown kinds, or ids that do not match
            their content
    """
    graph = Hypergraph()
    try:
        roots = set(data["roots"])
        for entry in data["nodes"]:
            kind = NodeKind(entry["kind"])
            children = tuple(entry.get("children", ()))
            payload = entry.get("payload")
            if node_key(kind, payload, children) != entry["id"]:
                raise LoadError(f"node id {entry['id']} does not match its content")
            node = Node(
                id=entry["id"],
                kind=kind,
                payload=payload,
                children=children,
                type=entry.get("type"),
            )
            graph._insert_raw(node, root=node.id in roots)
        for entry in data["edges"]:
            inputs = tuple(entry["inputs"])
            outputs = tuple(entry["outputs"])
            for node_id in inputs + outputs:
                if node_id not in graph:
                    raise LoadError(f"edge {entry['id']} references unknown node {node_id}")
            graph._insert_edge(entry["color"], EdgeClass(entry["class"]), inputs, outputs)
    except (KeyError, TypeError, ValueError) as exc:
        raise LoadError(f"malformed graph document: {exc}") from exc
    graph._revision = len(graph.nodes) + len(graph.edges)
    return graph


def _export_dot(graph: Hypergraph) -> str:
    lines: List[str] = ["digraph proofgraph {", "  rankdir=BT;"]
    for node in graph.nodes.values():
        shape = "box" if graph.is_root(node.id) else "ellipse"
        lines.append(f"  n_{node.id} [label={json.dumps(node_label(node))}, shape={shape}];")
    for edge in graph.edges.values():
        lines.append(f"  {edge.id} [shape=point, xlabel={json.dumps(edge.color)}];")
        for position, node_id in enumerate(edge.inputs):
            lines.append(f'  n_{node_id} -> {edge.id} [arrowhead=none, label="{position}"];')
        if edge.is_construction:
            style = ""
        elif edge.edge_class is EdgeClass.TYPING:
            style = ", style=dotted"
        else:
            style = ", style=dashed"
        for node_id in edge.outputs:
            lines.append(f"  {edge.id} -> n_{node_id} [label={json.dumps(edge.color)}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(graph: Hypergraph, fmt: str = "json") -> bytes:
    """Serialize a graph.

    Args:
        graph: Graph to export
        fmt: "json" (lossless) or "dot" (one auxiliary point vertex per hyperedge)

    Returns:
        UTF-8 encoded document
    """
    if fmt == "json":
        text = json.dumps(graph_to_dict(graph), indent=2) + "\n"
    elif fmt == "dot":
        text = _export_dot(graph)
    else:
        raise ValueError(f"unknown export format {fmt!r}; expected one of {FORMATS}")
    logger.debug(f"Exported {graph!r} as {fmt}")
    return text.encode("utf-8")


def import_json(blob: bytes) -> Hypergraph:
    """Inverse of ``export(graph, "json")``."""
    try:
        data = json.loads(blob.decode("utf-8") if isinstance(blob, bytes) else blob)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise LoadError(f"not a JSON graph document: {exc}") from exc
    return graph_from_dict(data)


__all__ = [
    "FORMATS",
    "node_label",
    "graph_to_dict",
    "graph_from_dict",
    "export",
    "import_json",
]
