"""Schema visualization helpers using NetworkX + PyVis."""

from __future__ import annotations

from pathlib import Path

import networkx as nx
from pyvis.network import Network

from mutual_hint.network.engine import NetworkSchema, network_schema
from mutual_hint.network.schema import SOURCE_NODES


def build_nx_graph(schema: NetworkSchema = network_schema) -> nx.DiGraph:
    """Return a DiGraph of both star schemas joined by the anchor relation."""

    graph = nx.DiGraph()
    documents = set(SOURCE_NODES.values())

    for name, node in schema.nodes.items():
        graph.add_node(
            name,
            label=name,
            title=node.description or name,
            size=25 if name in documents else 12,
            group=0 if name in documents else 1,
            attributes=", ".join(node.attributes),
        )

    for (source, rel_name, target), rel in schema.relations.items():
        graph.add_edge(
            source,
            target,
            label=rel_name,
            title=rel.description or rel_name,
            weight=1.0,
            dashes=target in documents and source != target,
        )

    return graph


def render_pyvis_network(
    graph: nx.DiGraph,
    html_path: str | Path = "schema_network.html",
    height: str = "700px",
    width: str = "100%",
    physics: bool = True,
    node_font_size: int = 14,
    edge_width: float = 2.0,
    edge_font_size: int = 12,
) -> Network:
    """Convert the NetworkX graph into a PyVis interactive network."""

    net = Network(height=height, width=width, notebook=False, directed=True)
    net.from_nx(graph)

    for node in net.nodes:
        node.setdefault("font", {})
        node["font"].update({"size": node_font_size})

    for edge in net.edges:
        edge["width"] = edge_width
        edge.setdefault("font", {})
        edge["font"].update({"size": edge_font_size, "align": "horizontal"})

    net.toggle_physics(physics)

    html_path = Path(html_path)
    html_path.parent.mkdir(parents=True, exist_ok=True)
    net.write_html(str(html_path))
    return net


if __name__ == "__main__":
    render_pyvis_network(build_nx_graph(), html_path="schema_network.html")
