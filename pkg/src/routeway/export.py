"""DOT and JSON renderings of route graphs and roadmap subgraphs."""

from __future__ import annotations

import json
from collections.abc import Iterable
from dataclasses import dataclass

from .core import Roadmap, RouteGraph, Waypoint
from .errors import InvalidObject

ANCHOR_SHAPE = "doubleoctagon"
NODE_SHAPE = "box"


@dataclass(frozen=True)
class ExportNode:
    id: str
    label: str
    anchor: bool = False


@dataclass(frozen=True)
class ExportEdge:
    source: str
    target: str
    trail: str
    two_way_origin: bool = False


@dataclass(frozen=True)
class ExportGraph:
    nodes: tuple[ExportNode, ...]
    edges: tuple[ExportEdge, ...]

    def __post_init__(self) -> None:
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise InvalidObject("export node ids must be unique")
        known = set(ids)
        for e in self.edges:
            if e.source not in known or e.target not in known:
                raise InvalidObject(f"export edge {e.source} -> {e.target} names an unknown node")

    def to_json(self) -> dict:
        return {
            "nodes": [{"id": n.id, "label": n.label, "anchor": n.anchor} for n in self.nodes],
            "edges": [
                {"from": e.source, "to": e.target, "trail": e.trail, "two_way_origin": e.two_way_origin}
                for e in self.edges
            ],
        }


def _build(
    vertices: Iterable[Waypoint],
    edges: Iterable[tuple[Waypoint, Waypoint, str, bool]],
    anchors: Iterable[Waypoint],
) -> ExportGraph:
    # Waypoints compare by statement, so map each vertex to the id it was first seen under.
    ids: dict[Waypoint, str] = {}
    for v in vertices:
        ids.setdefault(v, v.id)
    anchor_set = set(anchors)
    nodes = tuple(ExportNode(ids[v], v.label, v in anchor_set) for v in ids)
    return ExportGraph(
        nodes,
        tuple(ExportEdge(ids[s], ids[t], trail, two) for s, t, trail, two in edges),
    )


def export_graph(graph: RouteGraph, anchors: Iterable[Waypoint] = ()) -> ExportGraph:
    return _build(
        graph.vertices,
        ((e.source, e.target, e.trail.id, e.two_way_origin) for e in graph.edges),
        anchors,
    )


def roadmap_subgraph(roadmap: Roadmap, anchors: Iterable[Waypoint] = ()) -> ExportGraph:
    """All waypoints and trailed units of a roadmap; two-way units give two edges."""
    edges = []
    for u in roadmap.units():
        if u.trail is None:
            continue
        edges.append((u.initial, u.terminal, u.trail.id, u.two_way))
        if u.two_way:
            edges.append((u.terminal, u.initial, u.trail.id, True))
    return _build(roadmap.waypoints(), edges, anchors)


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def export_dot(graph: ExportGraph) -> str:
    lines = ["digraph {"]
    for n in graph.nodes:
        shape = ANCHOR_SHAPE if n.anchor else NODE_SHAPE
        lines.append(f"  {_dot_quote(n.id)} [label={_dot_quote(n.label)}, shape={shape}];")
    for e in graph.edges:
        attrs = f"label={_dot_quote(e.trail)}"
        if e.two_way_origin:
            attrs += ", style=dashed"
        lines.append(f"  {_dot_quote(e.source)} -> {_dot_quote(e.target)} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(graph: ExportGraph) -> str:
    return json.dumps(graph.to_json(), indent=2, ensure_ascii=False) + "\n"
