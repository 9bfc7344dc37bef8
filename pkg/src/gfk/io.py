"""Graph and transcript serialization, plus DOT rendering."""

from __future__ import annotations

import json
from typing import Mapping

from gfk.graph import GraphError, GraphState, new_graph

DOT_COMMENT = "// gfk-graph: "

# Yellow split node, blue kept side, green other side.
ROLE_STYLE = {
    "target": 'style=filled, fillcolor="gold"',
    "kept": 'style=filled, fillcolor="lightblue"',
    "rest": 'style=filled, fillcolor="palegreen"',
    "new": 'style=filled, fillcolor="orange"',
    "ancilla": 'style=dashed, color="gray50"',
    "measured": 'style="dashed,filled", fillcolor="gray90", fontcolor="gray40"',
}


def graph_to_json(g: GraphState) -> dict:
    out: dict = {"n": g.n, "edges": [[a, b] for a, b in g.edges()]}
    if g.labels is not None:
        out["labels"] = list(g.labels)
    return out


def graph_from_json(obj) -> GraphState:
    if not isinstance(obj, dict):
        raise GraphError("graph JSON must be an object with fields 'n' and 'edges'")
    if "n" not in obj:
        raise GraphError("graph JSON: missing field 'n'")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphError(f"graph JSON: field 'n' must be a non-negative integer, got {n!r}")
    edges = obj.get("edges", [])
    if not isinstance(edges, list) or not all(
        isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        for e in edges
    ):
        raise GraphError("graph JSON: field 'edges' must be a list of [a, b] integer pairs")
    labels = obj.get("labels")
    if labels is not None and (not isinstance(labels, list) or not all(isinstance(x, str) for x in labels)):
        raise GraphError("graph JSON: field 'labels' must be a list of strings")
    return new_graph(n, edges, labels)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=False, separators=(", ", ": "))


def graph_dumps(g: GraphState) -> str:
    return dumps(graph_to_json(g))


def parse_edge_list(text: str) -> GraphState:
    """Whitespace format: first line is the vertex count, then one ``a b`` pair per line."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("edge list: missing vertex count line")
    try:
        n = int(lines[0])
    except ValueError:
        raise GraphError(f"edge list: first line must be the vertex count, got {lines[0]!r}") from None
    edges = []
    for i, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"edge list line {i}: expected 'a b', got {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"edge list line {i}: vertices must be integers, got {ln!r}") from None
    return new_graph(n, edges)


def parse_graph(text: str) -> GraphState:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"graph JSON: {exc}") from None
        return graph_from_json(obj)
    return parse_edge_list(text)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: GraphState, roles: Mapping[int, str] | None = None, name: str = "G") -> str:
    """Render as an undirected DOT graph.

    Vertices and edges appear in index order. The first line is a comment
    holding the graph JSON so the structure can be read back with
    ``graph_from_dot``.
    """
    roles = roles or {}
    lines = [DOT_COMMENT + graph_dumps(g), f"graph {name} {{"]
    lines.append("  node [shape=circle];")
    for v in range(g.n):
        attrs = [f"label={_quote(g.label(v))}"]
        role = roles.get(v)
        if role is None and g.is_measured(v):
            role = "measured"
        if role is not None:
            if role not in ROLE_STYLE:
                raise ValueError(f"unknown DOT role {role!r}")
            attrs.append(ROLE_STYLE[role])
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for a, b in g.edges():
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_from_dot(text: str) -> GraphState:
    for ln in text.splitlines():
        if ln.startswith(DOT_COMMENT):
            return graph_from_json(json.loads(ln[len(DOT_COMMENT):]))
    raise GraphError("DOT text has no embedded gfk-graph comment")


def fission_roles(g: GraphState, target: int, kept, new_vertices, ancillas=()) -> dict[int, str]:
    roles: dict[int, str] = {}
    for v in ancillas:
        roles[v] = "measured" if g.is_measured(v) else "ancilla"
    roles[target] = "target"
    for v in new_vertices:
        roles[v] = "new"
    for v in kept:
        roles[v] = "kept"
    for v in range(g.n):
        if v not in roles and g.has_edge(target, v):
            roles[v] = "rest"
    return roles
