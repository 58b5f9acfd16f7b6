"""Reading and writing graphs: the gpc-graph-v1 JSON format and DOT export.

JSON layout (bit-exact round trips):

    { "format": "gpc-graph-v1",
      "vertices": ["<label>", ...],
      "edges": [["a","b"], ...] }

Labels are the rendered vertex strings; a loop is ["v","v"]; each edge
lists the lexicographically smaller label first and the edge list is
sorted lexicographically.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import FormatError
from .graphs import Atom, Graph

FORMAT_NAME = "gpc-graph-v1"


def graph_to_dict(G: Graph) -> dict[str, Any]:
    edges = sorted([a.render(), b.render()] for a, b in G.edges)
    return {
        "format": FORMAT_NAME,
        "vertices": [v.render() for v in G.vertices],
        "edges": edges,
    }


def graph_from_dict(data: Any) -> Graph:
    if not isinstance(data, dict):
        raise FormatError("graph JSON must be an object")
    if data.get("format") != FORMAT_NAME:
        raise FormatError(f"unsupported format {data.get('format')!r}; expected {FORMAT_NAME!r}")
    verts = data.get("vertices")
    edges = data.get("edges")
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise FormatError("'vertices' must be a list of strings")
    if not isinstance(edges, list):
        raise FormatError("'edges' must be a list of 2-element lists")
    pairs = []
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise FormatError(f"malformed edge entry {e!r}")
        pairs.append((e[0], e[1]))
    return Graph.build([Atom(v) for v in verts], pairs)


def write_graph_json(G: Graph) -> str:
    return json.dumps(graph_to_dict(G), indent=2) + "\n"


def read_graph_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(data)


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return read_graph_json(fh.read())


def save_graph(G: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_graph_json(G))


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(G: Graph, name: str = "g") -> str:
    """Undirected DOT export with stable ordering; loops allowed."""
    lines = [f"graph {name} {{"]
    for v in G.vertices:
        lines.append(f"  {_dot_quote(v.render())};")
    for a, b in sorted([(a.render(), b.render()) for a, b in G.edges]):
        lines.append(f"  {_dot_quote(a)} -- {_dot_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
