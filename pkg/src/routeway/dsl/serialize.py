"""Canonical text form of a :class:`Document`.

Trails are all written at top level and base fields refer to them with
``include``; that keeps one shape per object while parsing back to an equal
document.
"""

from __future__ import annotations

import re

from ..core import RouteUnit, Trail, Waypoint
from ..templates import is_identifier
from .document import Document, RoutewayDecl

HEADER = "# routeway document v1"

_NUMBER = re.compile(r"-?\d+(?:\.\d+)?\Z")
_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r"}
_ESCAPE_RE = re.compile(r'[\\"\n\t\r]')


def quote(text: str) -> str:
    return '"' + _ESCAPE_RE.sub(lambda m: _ESCAPES[m.group()], text) + '"'


def _statements(parts: tuple[str, ...]) -> str:
    if len(parts) == 1:
        return quote(parts[0])
    return "(" + ", ".join(quote(p) for p in parts) + ")"


def _term(term: str) -> str:
    if is_identifier(term) or _NUMBER.match(term):
        return term
    return quote(term)


def _trail(trail: Trail) -> str:
    head = f"trail {trail.id}"
    if trail.params:
        head += "(" + ", ".join(trail.params) + ")"
    parts = [f"{head}: {quote(trail.statement)}"]
    parts.extend(f"requires {quote(h)}" for h in trail.hypotheses)
    if trail.has_templates:
        parts.append(
            f"infers {_statements(trail.premise_template)} => {_statements(trail.conclusion_template)}"  # type: ignore[arg-type]
        )
    return " ".join(parts)


def _waypoint(wp: Waypoint) -> str:
    line = f"waypoint {wp.id}: {_statements(wp.statements)}"
    if wp.display is not None:
        line += f" display {quote(wp.display)}"
    return line


def _unit(unit: RouteUnit) -> str:
    if unit.trail is None:
        arrow = "=>"
    else:
        inner = unit.trail.id
        if unit.substitution is not None:
            inner += " with " + ", ".join(f"{k}=:{_term(v)}" for k, v in unit.substitution.items())
        arrow = ("<=[" if unit.two_way else "=[") + inner + "]=>"
    line = f"{unit.initial.id} {arrow} {unit.terminal.id}"
    if unit.compass is not None:
        line += f" compass {quote(unit.compass)}"
    return line


def _routeway(decl: RoutewayDecl) -> list[str]:
    head = f"routeway {decl.name}"
    if decl.params:
        head += "(" + ", ".join(decl.params) + ")"
    head += f" in {decl.basefield.id} from {decl.start.id} to {decl.end.id}"
    if decl.compass is not None:
        head += f" compass {quote(decl.compass)}"
    if not decl.units:
        return [head + " {}"]
    return [head + " {"] + ["  " + _unit(u) for u in decl.units] + ["}"]


def serialize(doc: Document) -> str:
    sections: list[list[str]] = []
    sections.append([_trail(t) for t in doc.trails])
    basefields = []
    for bf in doc.basefields:
        head = f"basefield {bf.id}"
        if bf.extends is not None:
            head += f" extends {bf.extends.id}"
        if bf.trails:
            basefields += [head + " {", "  include " + ", ".join(t.id for t in bf.trails), "}"]
        else:
            basefields.append(head + " {}")
    sections.append(basefields)
    sections.append([_waypoint(w) for w in doc.waypoints])
    sections.append([line for r in doc.routeways for line in _routeway(r)])
    sections.append(
        [
            f"roadmap {r.name} from {r.start.id} to {r.destination.id} {{ {', '.join(r.routeways)} }}"
            for r in doc.roadmaps
        ]
    )
    sections.append(
        [
            f"atlas {a.name} targets ({', '.join(w.id for w in a.targets)}) {{ {', '.join(a.roadmaps)} }}"
            .replace("{  }", "{}")
            for a in doc.atlases
        ]
    )
    sections.append([f"filtration {f.name}: {', '.join(f.basefields)}" for f in doc.filtrations])
    body = "\n\n".join("\n".join(s) for s in sections if s)
    return HEADER + "\n" + ("\n" + body + "\n" if body else "")
