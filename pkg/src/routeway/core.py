"""Domain model: waypoints, trails, route units, routeways, base fields,
route graphs, roadmaps and atlases.

All types are immutable once constructed.  Waypoints compare by their
normalized statement tuple, so two declarations of the same statement are the
same vertex regardless of the identifier they were declared under.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field

from . import templates
from .diagnostics import Span
from .errors import (
    BrokenChain,
    DuplicateWaypoint,
    EndpointMismatch,
    InvalidObject,
    UnknownTrail,
)

DEFECTIVE_UNIT = "DEFECTIVE_UNIT"
REDUCIBLE_UNIT = "REDUCIBLE_UNIT"
TEMPLATE_MISMATCH = "TEMPLATE_MISMATCH"


@dataclass(frozen=True, eq=False)
class Waypoint:
    id: str
    statements: tuple[str, ...]
    display: str | None = None
    span: Span | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        statements = self.statements
        if isinstance(statements, str):
            statements = (statements,)
        statements = tuple(statements)
        if not statements:
            raise InvalidObject(f"waypoint {self.id!r} has no statements")
        if not all(isinstance(s, str) for s in statements):
            raise InvalidObject(f"waypoint {self.id!r}: statements must be text")
        object.__setattr__(self, "statements", statements)
        object.__setattr__(self, "_key", tuple(templates.normalize(s) for s in statements))

    @property
    def key(self) -> tuple[str, ...]:
        return self._key  # type: ignore[attr-defined]

    @property
    def is_tuple(self) -> bool:
        return len(self.statements) > 1

    @property
    def label(self) -> str:
        if self.display is not None:
            return self.display
        if len(self.statements) == 1:
            return self.statements[0]
        return "(" + ", ".join(self.statements) + ")"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Waypoint):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)


@dataclass(frozen=True)
class Trail:
    """A justification.  With templates it is a general route unit
    ``premise_template => conclusion_template`` over ``params``."""

    id: str
    statement: str
    params: tuple[str, ...] = ()
    hypotheses: tuple[str, ...] = ()
    premise_template: tuple[str, ...] | None = None
    conclusion_template: tuple[str, ...] | None = None
    span: Span | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(self.params))
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))
        if len(set(self.params)) != len(self.params):
            raise InvalidObject(f"trail {self.id!r} repeats a parameter")
        for name in self.params:
            if not templates.is_identifier(name):
                raise InvalidObject(f"trail {self.id!r}: bad parameter name {name!r}")
        if len(set(self.hypotheses)) != len(self.hypotheses):
            raise InvalidObject(f"trail {self.id!r} repeats a hypothesis")
        if (self.premise_template is None) != (self.conclusion_template is None):
            raise InvalidObject(
                f"trail {self.id!r} needs both a premise and a conclusion template"
            )
        for name in ("premise_template", "conclusion_template"):
            value = getattr(self, name)
            if value is None:
                continue
            if isinstance(value, str):
                value = (value,)
            value = tuple(value)
            if not value:
                raise InvalidObject(f"trail {self.id!r}: empty {name.replace('_', ' ')}")
            object.__setattr__(self, name, value)

    @property
    def has_templates(self) -> bool:
        return self.premise_template is not None


@dataclass(frozen=True, eq=False)
class Substitution(Mapping[str, str]):
    """Bindings ``param =: term``.  Compares like a dict."""

    bindings: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        pairs = self.bindings
        if isinstance(pairs, Mapping):
            pairs = tuple(pairs.items())
        pairs = tuple((str(k), str(v)) for k, v in pairs)
        keys = [k for k, _ in pairs]
        if len(set(keys)) != len(keys):
            raise InvalidObject(f"substitution binds a parameter twice: {keys}")
        for key, term in pairs:
            if not templates.is_identifier(key):
                raise InvalidObject(f"bad parameter name {key!r}")
            if not term.strip():
                raise InvalidObject(f"empty term for parameter {key!r}")
        object.__setattr__(self, "bindings", pairs)
        object.__setattr__(self, "_map", dict(pairs))

    @classmethod
    def of(cls, mapping: Mapping[str, str] | None = None, **kwargs: str) -> Substitution:
        pairs = dict(mapping or {})
        pairs.update(kwargs)
        return cls(tuple(pairs.items()))

    def __getitem__(self, key: str) -> str:
        return self._map[key]  # type: ignore[attr-defined]

    def __iter__(self) -> Iterator[str]:
        return (k for k, _ in self.bindings)

    def __len__(self) -> int:
        return len(self.bindings)

    def __hash__(self) -> int:
        return hash(frozenset(self.bindings))

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}=:{v}" for k, v in self.bindings)
        return f"Substitution({inner})"


@dataclass(frozen=True)
class RouteUnit:
    initial: Waypoint
    terminal: Waypoint
    trail: Trail | None = None
    substitution: Substitution | None = None
    two_way: bool = False
    compass: str | None = None
    span: Span | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.substitution is not None and not isinstance(self.substitution, Substitution):
            object.__setattr__(self, "substitution", Substitution(self.substitution))
        if self.trail is None:
            if self.substitution is not None:
                raise InvalidObject("a defective unit cannot carry a substitution")
            if self.two_way:
                raise InvalidObject("a two-way unit needs a trail")
        elif self.substitution is not None:
            if set(self.substitution) != set(self.trail.params):
                raise InvalidObject(
                    f"substitution for trail {self.trail.id!r} binds "
                    f"{sorted(self.substitution)} but the trail declares "
                    f"{sorted(self.trail.params)}"
                )

    @property
    def is_defective(self) -> bool:
        return self.trail is None

    def reversed(self) -> RouteUnit:
        if not self.two_way:
            raise InvalidObject("only a two-way unit can be read backwards")
        return RouteUnit(
            self.terminal, self.initial, self.trail, self.substitution, True, self.compass
        )


@dataclass(frozen=True)
class Routeway:
    units: tuple[RouteUnit, ...]
    start: Waypoint
    end: Waypoint

    def __post_init__(self) -> None:
        units = tuple(self.units)
        object.__setattr__(self, "units", units)
        problem = chain_break(units, self.start, self.end)
        if problem is not None:
            raise BrokenChain(problem[1])

    @classmethod
    def empty(cls, at: Waypoint) -> Routeway:
        return cls((), at, at)

    @classmethod
    def of(cls, *units: RouteUnit) -> Routeway:
        if not units:
            raise InvalidObject("Routeway.of needs at least one unit; use Routeway.empty")
        return cls(units, units[0].initial, units[-1].terminal)

    @property
    def length(self) -> int:
        return len(self.units)

    def __len__(self) -> int:
        return len(self.units)

    @property
    def waypoints(self) -> tuple[Waypoint, ...]:
        return (self.start,) + tuple(u.terminal for u in self.units)

    def slice(self, lo: int, hi: int) -> Routeway:
        """Sub-routeway made of units ``lo`` .. ``hi - 1``."""
        points = self.waypoints
        return Routeway(self.units[lo:hi], points[lo], points[hi])


def chain_break(
    units: Sequence[RouteUnit], start: Waypoint, end: Waypoint
) -> tuple[int, str] | None:
    """Locate the first place the chaining condition fails.

    Returns ``(index, message)`` where ``index`` is the unit at fault (``len``
    for the final endpoint), or None if the units chain from start to end.
    """
    current = start
    for i, unit in enumerate(units):
        if unit.initial != current:
            return i, (
                f"unit {i + 1} starts at {unit.initial.id!r} "
                f"but the previous waypoint is {current.id!r}"
            )
        current = unit.terminal
    if current != end:
        return len(units), (
            f"routeway ends at {current.id!r} but is declared to end at {end.id!r}"
        )
    return None


def concat(g1: Routeway, g2: Routeway) -> Routeway:
    """Run ``g1`` then ``g2``."""
    if g1.end != g2.start:
        raise EndpointMismatch(
            f"cannot concatenate: first routeway ends at {g1.end.id!r}, "
            f"second starts at {g2.start.id!r}"
        )
    return Routeway(g1.units + g2.units, g1.start, g2.end)


def is_defective(unit: RouteUnit) -> bool:
    return unit.trail is None


@dataclass(frozen=True, eq=False)
class BaseField:
    id: str
    trails: tuple[Trail, ...] = ()
    extends: BaseField | None = None
    span: Span | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "trails", tuple(self.trails))
        ids = {t.id for t in self.trails}
        if self.extends is not None:
            ids |= self.extends.trail_ids
        object.__setattr__(self, "_trail_ids", frozenset(ids))

    @property
    def trail_ids(self) -> frozenset[str]:
        """Effective trail set, including everything inherited."""
        return self._trail_ids  # type: ignore[attr-defined]

    def all_trails(self) -> tuple[Trail, ...]:
        inherited = self.extends.all_trails() if self.extends else ()
        seen = {t.id for t in inherited}
        return inherited + tuple(t for t in self.trails if t.id not in seen)

    def __contains__(self, trail: object) -> bool:
        if isinstance(trail, Trail):
            return trail.id in self.trail_ids
        return trail in self.trail_ids

    def issubset(self, other: BaseField) -> bool:
        return self.trail_ids <= other.trail_ids

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BaseField):
            return NotImplemented
        return (
            self.id == other.id
            and self.trails == other.trails
            and (self.extends.id if self.extends else None)
            == (other.extends.id if other.extends else None)
        )

    def __hash__(self) -> int:
        return hash((self.id, self.trail_ids))

    def __repr__(self) -> str:
        parent = f" extends {self.extends.id}" if self.extends else ""
        return f"BaseField({self.id}{parent}: {sorted(self.trail_ids)})"


def matches_templates(unit: RouteUnit) -> bool:
    """Single-application check against the trail's templates.

    A missing substitution is read as the identity, so a parameterized trail
    used without ``with`` must match its templates literally.  A two-way unit
    may match in either orientation.  Trails without templates pass.
    """
    trail = unit.trail
    if trail is None:
        return False
    if not trail.has_templates:
        return True
    bindings: Mapping[str, str] = (
        unit.substitution if unit.substitution is not None else {p: p for p in trail.params}
    )

    def instance(parts: tuple[str, ...]) -> tuple[str, ...]:
        return tuple(templates.render(templates.substitute(p, bindings)) for p in parts)

    premise = instance(trail.premise_template)  # type: ignore[arg-type]
    conclusion = instance(trail.conclusion_template)  # type: ignore[arg-type]
    initial = tuple(templates.render(s) for s in unit.initial.statements)
    terminal = tuple(templates.render(s) for s in unit.terminal.statements)
    if (initial, terminal) == (premise, conclusion):
        return True
    return unit.two_way and (terminal, initial) == (premise, conclusion)


def irreducibility_failure(
    unit: RouteUnit, basefield: BaseField, registry: Mapping[str, Trail] | None = None
) -> str | None:
    """Why ``unit`` is not irreducible over ``basefield`` (a lint code), or None."""
    if unit.trail is None:
        return DEFECTIVE_UNIT
    if registry is not None and registry.get(unit.trail.id) != unit.trail:
        raise UnknownTrail(f"trail {unit.trail.id!r} is not defined in the document")
    if unit.trail.id not in basefield.trail_ids:
        return REDUCIBLE_UNIT
    if not matches_templates(unit):
        return TEMPLATE_MISMATCH
    return None


def is_irreducible(
    unit: RouteUnit, basefield: BaseField, registry: Mapping[str, Trail] | None = None
) -> bool:
    return irreducibility_failure(unit, basefield, registry) is None


def is_irreducible_routeway(routeway: Routeway, basefield: BaseField) -> bool:
    return all(is_irreducible(u, basefield) for u in routeway.units)


@dataclass(frozen=True)
class Edge:
    source: Waypoint
    target: Waypoint
    trail: Trail
    substitution: Substitution | None = None
    two_way_origin: bool = False

    @property
    def sort_key(self) -> tuple:
        subst = tuple(self.substitution.bindings) if self.substitution else ()
        return (self.trail.id, self.source.id, subst, self.target.id)

    def as_unit(self) -> RouteUnit:
        return RouteUnit(
            self.source, self.target, self.trail, self.substitution, self.two_way_origin
        )


@dataclass(frozen=True)
class Rejection:
    """A unit left out of a route graph, with the lint code saying why."""

    unit: RouteUnit
    code: str


@dataclass(frozen=True, eq=False)
class RouteGraph:
    """Labeled directed multigraph of irreducible route units."""

    basefield: BaseField
    vertices: tuple[Waypoint, ...]
    edges: tuple[Edge, ...]
    rejected: tuple[Rejection, ...] = ()

    def __post_init__(self) -> None:
        vertices = tuple(dict.fromkeys(self.vertices))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(self.edges))
        vertex_set = frozenset(vertices)
        out: dict[Waypoint, list[Edge]] = {v: [] for v in vertices}
        into: dict[Waypoint, list[Edge]] = {v: [] for v in vertices}
        for edge in self.edges:
            if edge.trail.id not in self.basefield.trail_ids:
                raise InvalidObject(
                    f"edge trail {edge.trail.id!r} is not in base field {self.basefield.id!r}"
                )
            if edge.source not in vertex_set or edge.target not in vertex_set:
                raise InvalidObject("edge endpoint is not a vertex")
            out[edge.source].append(edge)
            into[edge.target].append(edge)
        object.__setattr__(self, "_vertex_set", vertex_set)
        object.__setattr__(self, "_out", {v: tuple(es) for v, es in out.items()})
        object.__setattr__(self, "_in", {v: tuple(es) for v, es in into.items()})

    def __contains__(self, vertex: object) -> bool:
        return vertex in self._vertex_set  # type: ignore[attr-defined]

    def out_edges(self, vertex: Waypoint) -> tuple[Edge, ...]:
        return self._out.get(vertex, ())  # type: ignore[attr-defined]

    def in_edges(self, vertex: Waypoint) -> tuple[Edge, ...]:
        return self._in.get(vertex, ())  # type: ignore[attr-defined]

    def successors(self, vertex: Waypoint) -> Iterator[Waypoint]:
        return (e.target for e in self.out_edges(vertex))

    def without(self, vertex: Waypoint) -> RouteGraph:
        """The graph with ``vertex`` and its incident edges deleted."""
        return RouteGraph(
            self.basefield,
            tuple(v for v in self.vertices if v != vertex),
            tuple(e for e in self.edges if e.source != vertex and e.target != vertex),
        )

    def edge_multiset(self) -> dict[tuple, int]:
        counts: dict[tuple, int] = {}
        for e in self.edges:
            key = (e.source.key, e.target.key, e.trail.id, e.substitution, e.two_way_origin)
            counts[key] = counts.get(key, 0) + 1
        return counts

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RouteGraph):
            return NotImplemented
        return (
            self.basefield == other.basefield
            and set(self.vertices) == set(other.vertices)
            and self.edge_multiset() == other.edge_multiset()
        )

    __hash__ = None  # type: ignore[assignment]


def build_graph(
    units: Iterable[RouteUnit],
    basefield: BaseField,
    registry: Mapping[str, Trail] | None = None,
) -> RouteGraph:
    """Admit every irreducible unit as an edge (two-way units as two edges).

    Units that fail are kept on ``RouteGraph.rejected`` with the reason.
    """
    units = list(units)
    statements_by_id: dict[str, tuple[str, ...]] = {}
    for unit in units:
        for wp in (unit.initial, unit.terminal):
            seen = statements_by_id.setdefault(wp.id, wp.key)
            if seen != wp.key:
                raise DuplicateWaypoint(
                    f"waypoint id {wp.id!r} is used for two different statements"
                )

    vertices: list[Waypoint] = []
    edges: list[Edge] = []
    rejected: list[Rejection] = []
    for unit in units:
        reason = irreducibility_failure(unit, basefield, registry)
        if reason is not None:
            rejected.append(Rejection(unit, reason))
            continue
        assert unit.trail is not None
        vertices.extend((unit.initial, unit.terminal))
        edges.append(Edge(unit.initial, unit.terminal, unit.trail, unit.substitution, unit.two_way))
        if unit.two_way:
            edges.append(Edge(unit.terminal, unit.initial, unit.trail, unit.substitution, True))
    return RouteGraph(basefield, tuple(vertices), tuple(edges), tuple(rejected))


@dataclass(frozen=True)
class Roadmap:
    start: Waypoint
    destination: Waypoint
    routeways: tuple[Routeway, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "routeways", tuple(self.routeways))
        if not self.routeways:
            raise InvalidObject("a roadmap needs at least one routeway")
        for i, r in enumerate(self.routeways):
            if r.start != self.start or r.end != self.destination:
                raise EndpointMismatch(
                    f"routeway {i} runs {r.start.id!r} -> {r.end.id!r}, roadmap is "
                    f"{self.start.id!r} -> {self.destination.id!r}"
                )

    def waypoints(self) -> tuple[Waypoint, ...]:
        return tuple(dict.fromkeys(w for r in self.routeways for w in r.waypoints))

    def units(self) -> tuple[RouteUnit, ...]:
        return tuple(u for r in self.routeways for u in r.units)


@dataclass(frozen=True)
class Atlas:
    roadmaps: tuple[Roadmap, ...]
    targets: frozenset[Waypoint] | tuple[Waypoint, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "roadmaps", tuple(self.roadmaps))
        object.__setattr__(self, "targets", tuple(dict.fromkeys(self.targets)))


@dataclass(frozen=True)
class CoverageEntry:
    target: Waypoint
    roadmap_index: int | None
    routeway_index: int | None

    @property
    def covered(self) -> bool:
        return self.roadmap_index is not None


@dataclass(frozen=True)
class CoverageReport:
    entries: tuple[CoverageEntry, ...]

    @property
    def covering(self) -> bool:
        return all(e.covered for e in self.entries)

    @property
    def uncovered(self) -> tuple[Waypoint, ...]:
        return tuple(e.target for e in self.entries if not e.covered)


def atlas_coverage(atlas: Atlas) -> CoverageReport:
    """First witness (roadmap index, routeway index) for each target."""
    entries = []
    for target in atlas.targets:
        witness: tuple[int | None, int | None] = (None, None)
        for i, roadmap in enumerate(atlas.roadmaps):
            hit = next(
                (j for j, r in enumerate(roadmap.routeways) if target in r.waypoints), None
            )
            if hit is not None:
                witness = (i, hit)
                break
        entries.append(CoverageEntry(target, *witness))
    return CoverageReport(tuple(entries))
