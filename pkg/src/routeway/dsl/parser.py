"""Recursive-descent parser for ``.rwy`` documents.

Parsing runs in two passes.  The first builds a light syntax tree and stops at
the first syntax error.  The second resolves names into core objects and
collects every reference error it finds, so one run reports all of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import BaseField, RouteUnit, Substitution, Trail, Waypoint
from ..diagnostics import Diagnostic, Span, error
from ..errors import InvalidObject, RoutewayError
from .document import AtlasDecl, Document, FiltrationDecl, RoadmapDecl, RoutewayDecl
from .lexer import LexError, Token, tokenize

SYNTAX_ERROR = "SYNTAX_ERROR"
UNRESOLVED_REFERENCE = "UNRESOLVED_REFERENCE"
DUPLICATE_IDENTIFIER = "DUPLICATE_IDENTIFIER"
INVALID_DECLARATION = "INVALID_DECLARATION"

TOP_LEVEL = ("basefield", "trail", "waypoint", "routeway", "roadmap", "atlas", "filtration")


class ParseError(RoutewayError):
    code = "parse-failure"

    def __init__(self, diagnostics: list[Diagnostic]) -> None:
        self.diagnostics = diagnostics
        first = diagnostics[0]
        super().__init__(f"{first.span}: {first.message}" if first.span else first.message)


class _SyntaxError(Exception):
    def __init__(self, message: str, span: Span) -> None:
        self.message = message
        self.span = span


@dataclass
class _Name:
    value: str
    span: Span


@dataclass
class _TrailNode:
    name: _Name
    statement: str
    params: list[_Name]
    hypotheses: list[str]
    premise: tuple[str, ...] | None
    conclusion: tuple[str, ...] | None
    span: Span


@dataclass
class _BasefieldNode:
    name: _Name
    parent: _Name | None
    trails: list[_TrailNode]
    includes: list[_Name]


@dataclass
class _WaypointNode:
    name: _Name
    statements: tuple[str, ...]
    display: str | None


@dataclass
class _UnitNode:
    initial: _Name
    terminal: _Name
    trail: _Name | None
    bindings: list[tuple[_Name, str]] | None
    two_way: bool
    compass: str | None
    span: Span


@dataclass
class _RoutewayNode:
    name: _Name
    params: list[_Name]
    basefield: _Name
    start: _Name
    end: _Name
    compass: str | None
    units: list[_UnitNode]
    span: Span


@dataclass
class _RoadmapNode:
    name: _Name
    start: _Name
    end: _Name
    members: list[_Name]


@dataclass
class _AtlasNode:
    name: _Name
    targets: list[_Name]
    roadmaps: list[_Name]


@dataclass
class _FiltrationNode:
    name: _Name
    stages: list[_Name]


@dataclass
class _Tree:
    items: list[object] = field(default_factory=list)


def _join(a: Span, b: Span) -> Span:
    return Span(a.line, a.column, b.end_line, b.end_column)


class _Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> Token:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else self.tokens[-1]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def fail(self, expected: str, tok: Token | None = None) -> _SyntaxError:
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "EOF" else repr(tok.value)
        return _SyntaxError(f"expected {expected}, found {found}", tok.span)

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise self.fail(what or repr(kind))
        return self.advance()

    def keyword(self, word: str) -> Token:
        tok = self.peek()
        if tok.kind != "IDENT" or tok.value != word:
            raise self.fail(f"'{word}'")
        return self.advance()

    def at_keyword(self, word: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok.kind == "IDENT" and tok.value == word

    def name(self, what: str) -> _Name:
        tok = self.expect("IDENT", what)
        return _Name(tok.value, tok.span)

    def name_list(self, what: str) -> list[_Name]:
        names = [self.name(what)]
        while self.peek().kind == ",":
            self.advance()
            names.append(self.name(what))
        return names

    def string(self, what: str = "a quoted string") -> str:
        return self.expect("STRING", what).value

    def statements(self) -> tuple[str, ...]:
        if self.peek().kind == "(":
            self.advance()
            parts = [self.string()]
            while self.peek().kind == ",":
                self.advance()
                parts.append(self.string())
            self.expect(")", "')'")
            return tuple(parts)
        return (self.string("a quoted statement or a tuple of them"),)

    # -- items ------------------------------------------------------------

    def document(self) -> _Tree:
        tree = _Tree()
        while self.peek().kind != "EOF":
            tok = self.peek()
            if tok.kind != "IDENT" or tok.value not in TOP_LEVEL:
                raise self.fail("a declaration (" + ", ".join(TOP_LEVEL) + ")")
            tree.items.append(getattr(self, "item_" + tok.value)())
        return tree

    def item_trail(self) -> _TrailNode:
        start = self.keyword("trail")
        name = self.name("a trail name")
        params: list[_Name] = []
        if self.peek().kind == "(":
            self.advance()
            params = self.name_list("a parameter name")
            self.expect(")", "')'")
        self.expect(":", "':'")
        statement = self.string("the trail statement")
        hypotheses: list[str] = []
        premise = conclusion = None
        end = self.tokens[self.pos - 1].span
        while True:
            if self.at_keyword("requires") and self.peek(1).kind == "STRING":
                self.advance()
                hypotheses.append(self.string())
            elif self.at_keyword("infers") and self.peek(1).kind in ("STRING", "("):
                clause = self.advance()
                if premise is not None:
                    raise _SyntaxError("a trail takes at most one 'infers' clause", clause.span)
                premise = self.statements()
                self.expect("=>", "'=>'")
                conclusion = self.statements()
            else:
                break
            end = self.tokens[self.pos - 1].span
        return _TrailNode(name, statement, params, hypotheses, premise, conclusion, _join(start.span, end))

    def item_basefield(self) -> _BasefieldNode:
        self.keyword("basefield")
        name = self.name("a base field name")
        parent = None
        if self.at_keyword("extends"):
            self.advance()
            parent = self.name("a base field name")
        self.expect("{", "'{'")
        trails: list[_TrailNode] = []
        includes: list[_Name] = []
        while self.peek().kind != "}":
            if self.at_keyword("trail"):
                trails.append(self.item_trail())
            elif self.at_keyword("include"):
                self.advance()
                includes.extend(self.name_list("a trail name"))
            else:
                raise self.fail("'trail', 'include' or '}'")
        self.advance()
        return _BasefieldNode(name, parent, trails, includes)

    def item_waypoint(self) -> _WaypointNode:
        self.keyword("waypoint")
        name = self.name("a waypoint name")
        self.expect(":", "':'")
        statements = self.statements()
        display = None
        if self.at_keyword("display") and self.peek(1).kind == "STRING":
            self.advance()
            display = self.string()
        return _WaypointNode(name, statements, display)

    def item_routeway(self) -> _RoutewayNode:
        start_tok = self.keyword("routeway")
        name = self.name("a routeway name")
        params: list[_Name] = []
        if self.peek().kind == "(":
            self.advance()
            params = self.name_list("a parameter name")
            self.expect(")", "')'")
        self.keyword("in")
        basefield = self.name("a base field name")
        self.keyword("from")
        start = self.name("a waypoint name")
        self.keyword("to")
        end = self.name("a waypoint name")
        compass = None
        if self.at_keyword("compass"):
            self.advance()
            compass = self.string()
        self.expect("{", "'{'")
        units = []
        while self.peek().kind != "}":
            units.append(self.unit())
        close = self.advance()
        return _RoutewayNode(name, params, basefield, start, end, compass, units, _join(start_tok.span, close.span))

    def unit(self) -> _UnitNode:
        initial = self.name("a waypoint name or '}'")
        tok = self.peek()
        trail = None
        bindings = None
        two_way = False
        if tok.kind == "=>":
            self.advance()
        elif tok.kind in ("=[", "<=["):
            two_way = tok.kind == "<=["
            self.advance()
            trail = self.name("a trail name")
            if self.at_keyword("with"):
                self.advance()
                bindings = [self.binding()]
                while self.peek().kind == ",":
                    self.advance()
                    bindings.append(self.binding())
            self.expect("]=>", "']=>'")
        else:
            raise self.fail("an arrow ('=>', '=[P]=>' or '<=[P]=>')")
        terminal = self.name("a waypoint name")
        span = _join(initial.span, terminal.span)
        compass = None
        if self.at_keyword("compass") and self.peek(1).kind == "STRING":
            self.advance()
            compass = self.string()
        return _UnitNode(initial, terminal, trail, bindings, two_way, compass, span)

    def binding(self) -> tuple[_Name, str]:
        param = self.name("a parameter name")
        self.expect("=:", "'=:'")
        tok = self.peek()
        if tok.kind not in ("STRING", "IDENT", "NUMBER"):
            raise self.fail("a term (name, number or quoted string)")
        self.advance()
        return param, tok.value

    def item_roadmap(self) -> _RoadmapNode:
        self.keyword("roadmap")
        name = self.name("a roadmap name")
        self.keyword("from")
        start = self.name("a waypoint name")
        self.keyword("to")
        end = self.name("a waypoint name")
        self.expect("{", "'{'")
        members = self.name_list("a routeway name")
        self.expect("}", "'}'")
        return _RoadmapNode(name, start, end, members)

    def item_atlas(self) -> _AtlasNode:
        self.keyword("atlas")
        name = self.name("an atlas name")
        self.keyword("targets")
        self.expect("(", "'('")
        targets = [] if self.peek().kind == ")" else self.name_list("a waypoint name")
        self.expect(")", "')'")
        self.expect("{", "'{'")
        roadmaps = [] if self.peek().kind == "}" else self.name_list("a roadmap name")
        self.expect("}", "'}'")
        return _AtlasNode(name, targets, roadmaps)

    def item_filtration(self) -> _FiltrationNode:
        self.keyword("filtration")
        name = self.name("a filtration name")
        self.expect(":", "':'")
        return _FiltrationNode(name, self.name_list("a base field name"))


class _Resolver:
    def __init__(self) -> None:
        self.diagnostics: list[Diagnostic] = []
        self.doc = Document()

    def report(self, code: str, message: str, span: Span | None) -> None:
        self.diagnostics.append(error(code, message, span))

    def declare(self, table: dict, name: _Name, kind: str, value: object) -> bool:
        if name.value in table:
            self.report(DUPLICATE_IDENTIFIER, f"{kind} {name.value!r} is declared twice", name.span)
            return False
        table[name.value] = value
        return True

    def lookup(self, table: dict, name: _Name, kind: str):
        if name.value not in table:
            self.report(UNRESOLVED_REFERENCE, f"undeclared {kind} {name.value!r}", name.span)
            return None
        return table[name.value]

    def build_trail(self, node: _TrailNode) -> Trail | None:
        try:
            return Trail(
                node.name.value,
                node.statement,
                tuple(p.value for p in node.params),
                tuple(node.hypotheses),
                node.premise,
                node.conclusion,
                span=node.span,
            )
        except InvalidObject as exc:
            self.report(INVALID_DECLARATION, exc.message, node.name.span)
            return None

    def resolve(self, tree: _Tree) -> Document:
        doc = self.doc
        items = tree.items

        trails: dict[str, Trail] = {}
        owned: dict[str, list[Trail]] = {}
        for item in items:
            nodes = [item] if isinstance(item, _TrailNode) else (
                item.trails if isinstance(item, _BasefieldNode) else []
            )
            for node in nodes:
                trail = self.build_trail(node)
                if trail is not None and self.declare(trails, node.name, "trail", trail):
                    doc.trails.append(trail)
                    if isinstance(item, _BasefieldNode):
                        owned.setdefault(item.name.value, []).append(trail)

        self.resolve_basefields([i for i in items if isinstance(i, _BasefieldNode)], trails, owned)
        basefields = {b.id: b for b in doc.basefields}

        waypoints: dict[str, Waypoint] = {}
        for item in items:
            if isinstance(item, _WaypointNode):
                wp = Waypoint(item.name.value, item.statements, item.display, span=item.name.span)
                if self.declare(waypoints, item.name, "waypoint", wp):
                    doc.waypoints.append(wp)

        routeways: dict[str, RoutewayDecl | None] = {}
        for item in items:
            if isinstance(item, _RoutewayNode):
                decl = self.resolve_routeway(item, basefields, waypoints, trails)
                if self.declare(routeways, item.name, "routeway", decl) and decl is not None:
                    doc.routeways.append(decl)

        roadmaps: dict[str, RoadmapDecl | None] = {}
        for item in items:
            if isinstance(item, _RoadmapNode):
                decl = self.resolve_roadmap(item, waypoints, routeways)
                if self.declare(roadmaps, item.name, "roadmap", decl) and decl is not None:
                    doc.roadmaps.append(decl)

        atlases: dict[str, AtlasDecl] = {}
        for item in items:
            if isinstance(item, _AtlasNode):
                targets = [self.lookup(waypoints, t, "waypoint") for t in item.targets]
                for member in item.roadmaps:
                    if member.value not in roadmaps:
                        self.lookup(roadmaps, member, "roadmap")
                decl = AtlasDecl(
                    item.name.value,
                    tuple(t for t in targets if t is not None),
                    tuple(r.value for r in item.roadmaps),
                    span=item.name.span,
                )
                if self.declare(atlases, item.name, "atlas", decl):
                    doc.atlases.append(decl)

        filtrations: dict[str, FiltrationDecl] = {}
        for item in items:
            if isinstance(item, _FiltrationNode):
                for stage in item.stages:
                    self.lookup(basefields, stage, "base field")
                decl = FiltrationDecl(
                    item.name.value, tuple(s.value for s in item.stages), span=item.name.span
                )
                if self.declare(filtrations, item.name, "filtration", decl):
                    doc.filtrations.append(decl)
        return doc

    def resolve_basefields(
        self,
        nodes: list[_BasefieldNode],
        trails: dict[str, Trail],
        owned: dict[str, list[Trail]],
    ) -> None:
        by_name: dict[str, _BasefieldNode] = {}
        for node in nodes:
            self.declare(by_name, node.name, "base field", node)
        built: dict[str, BaseField | None] = {}

        def build(node: _BasefieldNode, trail_of: list[str]) -> BaseField | None:
            key = node.name.value
            if key in built:
                return built[key]
            if key in trail_of:
                self.report(
                    INVALID_DECLARATION,
                    "base field extension cycle: " + " -> ".join(trail_of + [key]),
                    node.name.span,
                )
                built[key] = None
                return None
            parent = None
            if node.parent is not None:
                parent_node = self.lookup(by_name, node.parent, "base field")
                if parent_node is not None:
                    parent = build(parent_node, trail_of + [key])
            own = list(owned.get(key, []))
            for inc in node.includes:
                trail = self.lookup(trails, inc, "trail")
                if trail is not None:
                    own.append(trail)
            field = BaseField(key, tuple(own), parent, span=node.name.span)
            built[key] = field
            return field

        for node in nodes:
            if by_name.get(node.name.value) is node:
                build(node, [])
        for node in nodes:
            field = built.get(node.name.value)
            if by_name.get(node.name.value) is node and field is not None:
                self.doc.basefields.append(field)

    def resolve_routeway(
        self,
        node: _RoutewayNode,
        basefields: dict[str, BaseField],
        waypoints: dict[str, Waypoint],
        trails: dict[str, Trail],
    ) -> RoutewayDecl | None:
        ok = True
        basefield = self.lookup(basefields, node.basefield, "base field")
        start = self.lookup(waypoints, node.start, "waypoint")
        end = self.lookup(waypoints, node.end, "waypoint")
        params = [p.value for p in node.params]
        if len(set(params)) != len(params):
            self.report(INVALID_DECLARATION, f"routeway {node.name.value!r} repeats a parameter", node.name.span)
            ok = False
        units = []
        for u in node.units:
            initial = self.lookup(waypoints, u.initial, "waypoint")
            terminal = self.lookup(waypoints, u.terminal, "waypoint")
            trail = self.lookup(trails, u.trail, "trail") if u.trail is not None else None
            if initial is None or terminal is None or (u.trail is not None and trail is None):
                ok = False
                continue
            subst = None
            try:
                if u.bindings is not None:
                    subst = Substitution(tuple((p.value, term) for p, term in u.bindings))
                units.append(RouteUnit(initial, terminal, trail, subst, u.two_way, u.compass, span=u.span))
            except InvalidObject as exc:
                self.report(INVALID_DECLARATION, exc.message, u.span)
                ok = False
        if not ok or basefield is None or start is None or end is None:
            return None
        return RoutewayDecl(
            node.name.value, basefield, start, end, tuple(units), tuple(params), node.compass, span=node.span
        )

    def resolve_roadmap(
        self,
        node: _RoadmapNode,
        waypoints: dict[str, Waypoint],
        routeways: dict[str, RoutewayDecl | None],
    ) -> RoadmapDecl | None:
        start = self.lookup(waypoints, node.start, "waypoint")
        end = self.lookup(waypoints, node.end, "waypoint")
        ok = start is not None and end is not None
        for member in node.members:
            if member.value not in routeways:
                self.lookup(routeways, member, "routeway")
                ok = False
                continue
            decl = routeways[member.value]
            if decl is None or not ok:
                ok = False
                continue
            if decl.start != start or decl.end != end:
                self.report(
                    INVALID_DECLARATION,
                    f"routeway {member.value!r} runs {decl.start.id!r} -> {decl.end.id!r}, "
                    f"not {node.start.value!r} -> {node.end.value!r}",
                    member.span,
                )
                ok = False
        if not ok:
            return None
        return RoadmapDecl(
            node.name.value, start, end, tuple(m.value for m in node.members), span=node.name.span
        )


def parse(source: str) -> Document:
    """Parse ``.rwy`` text.  Raises :class:`ParseError` carrying diagnostics."""
    try:
        tree = _Parser(tokenize(source)).document()
    except LexError as exc:
        raise ParseError([error(SYNTAX_ERROR, exc.message, exc.span)]) from None
    except _SyntaxError as exc:
        raise ParseError([error(SYNTAX_ERROR, exc.message, exc.span)]) from None
    resolver = _Resolver()
    doc = resolver.resolve(tree)
    if resolver.diagnostics:
        raise ParseError(resolver.diagnostics)
    return doc
