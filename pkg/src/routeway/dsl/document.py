from __future__ import annotations

from dataclasses import dataclass, field

from ..core import (
    Atlas,
    BaseField,
    Roadmap,
    RouteGraph,
    RouteUnit,
    Routeway,
    Trail,
    Waypoint,
    build_graph,
)
from ..diagnostics import Span
from ..errors import UnknownName
from ..instantiate import ParameterizedRouteway


@dataclass(frozen=True)
class RoutewayDecl:
    """A named routeway as written, before the chaining check.

    Broken chains are representable here so the linter can report them;
    :meth:`routeway` is where chaining is enforced.
    """

    name: str
    basefield: BaseField
    start: Waypoint
    end: Waypoint
    units: tuple[RouteUnit, ...]
    params: tuple[str, ...] = ()
    compass: str | None = None
    span: Span | None = field(default=None, compare=False, repr=False)

    @property
    def is_parameterized(self) -> bool:
        return bool(self.params)

    def routeway(self) -> Routeway:
        return Routeway(self.units, self.start, self.end)

    def parameterized(self) -> ParameterizedRouteway:
        return ParameterizedRouteway(self.routeway(), self.params, self.name)


@dataclass(frozen=True)
class RoadmapDecl:
    name: str
    start: Waypoint
    destination: Waypoint
    routeways: tuple[str, ...]
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class AtlasDecl:
    name: str
    targets: tuple[Waypoint, ...]
    roadmaps: tuple[str, ...]
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class FiltrationDecl:
    name: str
    basefields: tuple[str, ...]
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass
class Document:
    basefields: list[BaseField] = field(default_factory=list)
    trails: list[Trail] = field(default_factory=list)
    waypoints: list[Waypoint] = field(default_factory=list)
    routeways: list[RoutewayDecl] = field(default_factory=list)
    roadmaps: list[RoadmapDecl] = field(default_factory=list)
    atlases: list[AtlasDecl] = field(default_factory=list)
    filtrations: list[FiltrationDecl] = field(default_factory=list)

    @staticmethod
    def _find(items, key: str, attr: str, kind: str):
        for item in items:
            if getattr(item, attr) == key:
                return item
        raise UnknownName(f"no {kind} named {key!r}")

    def basefield(self, name: str | None = None) -> BaseField:
        if name is None:
            if not self.basefields:
                raise UnknownName("document declares no base field")
            return self.basefields[0]
        return self._find(self.basefields, name, "id", "base field")

    def trail(self, name: str) -> Trail:
        return self._find(self.trails, name, "id", "trail")

    def waypoint(self, name: str) -> Waypoint:
        return self._find(self.waypoints, name, "id", "waypoint")

    def routeway_decl(self, name: str) -> RoutewayDecl:
        return self._find(self.routeways, name, "name", "routeway")

    def routeway(self, name: str) -> Routeway:
        return self.routeway_decl(name).routeway()

    def roadmap(self, name: str) -> Roadmap:
        decl: RoadmapDecl = self._find(self.roadmaps, name, "name", "roadmap")
        return Roadmap(
            decl.start,
            decl.destination,
            tuple(self.routeway(r) for r in decl.routeways),
            name=decl.name,
        )

    def atlas(self, name: str | None = None) -> Atlas:
        if name is None:
            if not self.atlases:
                raise UnknownName("document declares no atlas")
            decl = self.atlases[0]
        else:
            decl = self._find(self.atlases, name, "name", "atlas")
        return Atlas(tuple(self.roadmap(r) for r in decl.roadmaps), decl.targets, name=decl.name)

    def filtration(self, name: str | None = None) -> FiltrationDecl:
        if name is None:
            if not self.filtrations:
                raise UnknownName("document declares no filtration")
            return self.filtrations[0]
        return self._find(self.filtrations, name, "name", "filtration")

    @property
    def trail_registry(self) -> dict[str, Trail]:
        return {t.id: t for t in self.trails}

    def units(self) -> tuple[RouteUnit, ...]:
        """The concrete unit pool: units of every non-parameterized routeway."""
        return tuple(u for r in self.routeways if not r.is_parameterized for u in r.units)

    def graph(self, basefield: str | None = None) -> RouteGraph:
        return build_graph(self.units(), self.basefield(basefield), self.trail_registry)

    @property
    def annotations(self) -> dict[str, str]:
        """Compass notes keyed ``routeway`` or ``routeway#k`` (k = 1-based unit)."""
        notes: dict[str, str] = {}
        for r in self.routeways:
            if r.compass is not None:
                notes[r.name] = r.compass
            for k, u in enumerate(r.units, 1):
                if u.compass is not None:
                    notes[f"{r.name}#{k}"] = u.compass
        return notes
