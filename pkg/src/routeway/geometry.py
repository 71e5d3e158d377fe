"""Directed route geometry on a route graph.

Distances count route units, so everything here is breadth-first search on the
multigraph.  Waypoints that are not vertices of the graph behave as isolated
vertices: distance 0 to themselves and infinite to everything else.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import total_ordering

from .core import Edge, RouteGraph, Routeway, Waypoint
from .errors import EmptyAnchorSet, InfiniteDistance, NonMonotoneBasefields


@total_ordering
class Distance:
    """Element of ``{0, 1, 2, ...} ∪ {∞}``."""

    __slots__ = ("_value",)

    def __init__(self, value: int | None) -> None:
        if value is not None:
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise ValueError(f"distance must be a nonnegative int, got {value!r}")
        self._value = value

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    @property
    def value(self) -> int:
        if self._value is None:
            raise InfiniteDistance("distance is infinite")
        return self._value

    def __int__(self) -> int:
        return self.value

    @staticmethod
    def _coerce(other: object) -> Distance | None:
        if isinstance(other, Distance):
            return other
        if isinstance(other, int) and not isinstance(other, bool) and other >= 0:
            return Distance(other)
        if other == float("inf"):
            return INF
        return None

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._value == o._value

    def __lt__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._value is None:
            return False
        return o._value is None or self._value < o._value

    def __add__(self, other: object) -> Distance:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._value is None or o._value is None:
            return INF
        return Distance(self._value + o._value)

    __radd__ = __add__

    def __hash__(self) -> int:
        return hash(self._value)

    def __repr__(self) -> str:
        return "Distance.INF" if self._value is None else f"Distance({self._value})"

    def __str__(self) -> str:
        return "∞" if self._value is None else str(self._value)

    def to_json(self) -> int | str:
        return "inf" if self._value is None else self._value


INF = Distance(None)
Distance.INF = INF  # type: ignore[attr-defined]


def distances_from(
    graph: RouteGraph,
    source: Waypoint,
    *,
    reverse: bool = False,
    avoid: Waypoint | None = None,
) -> dict[Waypoint, int]:
    """Single-source BFS levels; only reachable waypoints appear.

    ``reverse`` walks edges backwards (distances *to* ``source``); ``avoid``
    deletes one vertex from the graph for the duration of the search.
    """
    if avoid is not None and source == avoid:
        return {}
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        edges = graph.in_edges(v) if reverse else graph.out_edges(v)
        for e in edges:
            w = e.source if reverse else e.target
            if w in dist or w == avoid:
                continue
            dist[w] = dist[v] + 1
            queue.append(w)
    return dist


def _lookup(levels: dict[Waypoint, int], w: Waypoint) -> Distance:
    return Distance(levels[w]) if w in levels else INF


def distance(graph: RouteGraph, a: Waypoint, b: Waypoint) -> Distance:
    return _lookup(distances_from(graph, a), b)


def geodesic(graph: RouteGraph, a: Waypoint, b: Waypoint) -> Routeway | None:
    """A shortest routeway ``a ⇝ b`` made of graph edges, or None.

    Walking back from ``b``, each step takes the predecessor edge with the
    smallest (trail id, source id), so the answer is deterministic.
    """
    levels = distances_from(graph, a)
    if b not in levels:
        return None
    steps: list[Edge] = []
    current = b
    while levels[current] > 0:
        want = levels[current] - 1
        edge = min(
            (e for e in graph.in_edges(current) if levels.get(e.source) == want),
            key=lambda e: e.sort_key,
        )
        steps.append(edge)
        current = edge.source
    steps.reverse()
    return Routeway(tuple(e.as_unit() for e in steps), a, b)


def _require_finite(graph: RouteGraph, a: Waypoint, b: Waypoint) -> tuple[dict, dict, int]:
    forward = distances_from(graph, a)
    if b not in forward:
        raise InfiniteDistance(f"d({a.id}, {b.id}) is infinite")
    backward = distances_from(graph, b, reverse=True)
    return forward, backward, forward[b]


def interval(graph: RouteGraph, a: Waypoint, b: Waypoint) -> frozenset[Waypoint]:
    """``{F : d(a,F) + d(F,b) = d(a,b)}``, cross-checked against geodesic membership."""
    forward, backward, total = _require_finite(graph, a, b)
    by_sum = frozenset(
        f for f in forward if f in backward and forward[f] + backward[f] == total
    )
    on_geodesics = geodesic_vertices(graph, a, b)
    if by_sum != on_geodesics:
        raise RuntimeError(
            f"interval({a.id}, {b.id}) disagrees with geodesic membership; "
            "the graph index is inconsistent"
        )
    return by_sum


def geodesic_vertices(graph: RouteGraph, a: Waypoint, b: Waypoint) -> frozenset[Waypoint]:
    """Vertices lying on at least one geodesic ``a ⇝ b``.

    Computed without distance sums: keep only the edges that advance the BFS
    level from ``a`` by one (every geodesic uses only these), then take the
    vertices of that layered subgraph that can still reach ``b`` inside it.
    """
    levels = distances_from(graph, a)
    if b not in levels:
        raise InfiniteDistance(f"d({a.id}, {b.id}) is infinite")
    layered_preds: dict[Waypoint, list[Waypoint]] = {}
    for v, lv in levels.items():
        if lv > levels[b]:
            continue
        for e in graph.out_edges(v):
            if levels.get(e.target) == lv + 1:
                layered_preds.setdefault(e.target, []).append(v)
    keep = {b}
    stack = [b]
    while stack:
        v = stack.pop()
        for u in layered_preds.get(v, ()):
            if u not in keep:
                keep.add(u)
                stack.append(u)
    return frozenset(keep)


def excess(graph: RouteGraph, f: Waypoint, a: Waypoint, b: Waypoint) -> int:
    """Detour cost ``d(a,f) + d(f,b) - d(a,b)`` of routing through ``f``."""
    legs = [
        (f"d({a.id}, {b.id})", distance(graph, a, b)),
        (f"d({a.id}, {f.id})", distance(graph, a, f)),
        (f"d({f.id}, {b.id})", distance(graph, f, b)),
    ]
    infinite = list(dict.fromkeys(name for name, d in legs if not d.is_finite))
    if infinite:
        raise InfiniteDistance(", ".join(infinite) + " infinite")
    ab, af, fb = (d.value for _, d in legs)
    return af + fb - ab


def is_perfect(graph: RouteGraph, f: Waypoint, a: Waypoint, b: Waypoint) -> bool:
    return f in interval(graph, a, b)


def is_essential(graph: RouteGraph, f: Waypoint, a: Waypoint, b: Waypoint) -> bool:
    """Every geodesic ``a ⇝ b`` passes through ``f``.

    A geodesic avoiding ``f`` exists exactly when ``b`` is still reachable from
    ``a`` within ``d(a,b)`` steps once ``f`` is deleted.
    """
    total = distance(graph, a, b)
    if not total.is_finite:
        raise InfiniteDistance(f"d({a.id}, {b.id}) is infinite")
    if f == a or f == b:
        return True
    return _lookup(distances_from(graph, a, avoid=f), b) > total


def anchor_distance(graph: RouteGraph, anchors: Iterable[Waypoint], x: Waypoint) -> Distance:
    anchors = list(anchors)
    if not anchors:
        raise EmptyAnchorSet("anchor distance needs a nonempty anchor set")
    backward = distances_from(graph, x, reverse=True)
    return min((_lookup(backward, s) for s in anchors), default=INF)


def closure(graph: RouteGraph, anchors: Iterable[Waypoint]) -> frozenset[Waypoint]:
    """Everything reachable from some anchor, anchors included."""
    seen = set(anchors)
    stack = list(seen)
    while stack:
        v = stack.pop()
        for w in graph.successors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


@dataclass(frozen=True)
class FiltrationStage:
    basefield: str
    distances: tuple[tuple[Waypoint, Waypoint, Distance], ...]


@dataclass(frozen=True)
class FiltrationReport:
    stages: tuple[FiltrationStage, ...]
    # (from, to, index of the stage where the distance went up)
    violations: tuple[tuple[Waypoint, Waypoint, int], ...]

    @property
    def monotone(self) -> bool:
        return not self.violations


def filtration_report(
    graphs: Sequence[RouteGraph], pairs: Sequence[tuple[Waypoint, Waypoint]]
) -> FiltrationReport:
    for i in range(1, len(graphs)):
        prev, cur = graphs[i - 1].basefield, graphs[i].basefield
        if not prev.issubset(cur):
            missing = sorted(prev.trail_ids - cur.trail_ids)
            raise NonMonotoneBasefields(
                f"base field {cur.id!r} does not contain {prev.id!r} (missing {missing})"
            )
    stages = []
    for g in graphs:
        cache: dict[Waypoint, dict[Waypoint, int]] = {}
        row = []
        for a, b in pairs:
            if a not in cache:
                cache[a] = distances_from(g, a)
            row.append((a, b, _lookup(cache[a], b)))
        stages.append(FiltrationStage(g.basefield.id, tuple(row)))
    violations = []
    for i in range(1, len(stages)):
        for (a, b, before), (_, _, after) in zip(stages[i - 1].distances, stages[i].distances):
            if after > before:
                violations.append((a, b, i))
    return FiltrationReport(tuple(stages), tuple(violations))
