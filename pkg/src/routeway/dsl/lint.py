from __future__ import annotations

from ..core import DEFECTIVE_UNIT, REDUCIBLE_UNIT, TEMPLATE_MISMATCH, irreducibility_failure
from ..diagnostics import Diagnostic, error, warning
from .document import Document, RoutewayDecl

BROKEN_CHAIN = "BROKEN_CHAIN"
UNVERIFIABLE_SINGLE_APPLICATION = "UNVERIFIABLE_SINGLE_APPLICATION"
UNUSED_TRAIL = "UNUSED_TRAIL"

LINT_CODES = (
    DEFECTIVE_UNIT,
    REDUCIBLE_UNIT,
    TEMPLATE_MISMATCH,
    UNVERIFIABLE_SINGLE_APPLICATION,
    BROKEN_CHAIN,
    UNUSED_TRAIL,
)


def _unit_diagnostics(decl: RoutewayDecl) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    bf = decl.basefield
    for k, unit in enumerate(decl.units, 1):
        where = f"{decl.name} unit {k} ({unit.initial.id} -> {unit.terminal.id})"
        reason = irreducibility_failure(unit, bf)
        if reason == DEFECTIVE_UNIT:
            out.append(error(reason, f"{where} has no trail", unit.span))
        elif reason == REDUCIBLE_UNIT:
            assert unit.trail is not None
            out.append(
                error(reason, f"{where}: trail {unit.trail.id!r} is not in base field {bf.id!r}", unit.span)
            )
        elif reason == TEMPLATE_MISMATCH:
            assert unit.trail is not None
            out.append(
                error(
                    reason,
                    f"{where} is not a single application of {unit.trail.id!r} under its substitution",
                    unit.span,
                )
            )
        elif unit.trail is not None and not unit.trail.has_templates:
            out.append(
                warning(
                    UNVERIFIABLE_SINGLE_APPLICATION,
                    f"{where}: trail {unit.trail.id!r} has no templates; single application is assumed",
                    unit.span,
                )
            )
    return out


def _chain_diagnostics(decl: RoutewayDecl) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    units = decl.units
    if not units:
        if decl.start != decl.end:
            out.append(
                error(
                    BROKEN_CHAIN,
                    f"{decl.name} is empty but runs {decl.start.id} -> {decl.end.id}",
                    decl.span,
                )
            )
        return out
    if units[0].initial != decl.start:
        out.append(
            error(
                BROKEN_CHAIN,
                f"{decl.name} starts at {decl.start.id} but its first unit leaves {units[0].initial.id}",
                units[0].span,
            )
        )
    for k in range(1, len(units)):
        prev, cur = units[k - 1], units[k]
        if prev.terminal != cur.initial:
            out.append(
                error(
                    BROKEN_CHAIN,
                    f"{decl.name} unit {k + 1} leaves {cur.initial.id}, "
                    f"but unit {k} arrives at {prev.terminal.id}",
                    cur.span,
                )
            )
    if units[-1].terminal != decl.end:
        out.append(
            error(
                BROKEN_CHAIN,
                f"{decl.name} ends at {decl.end.id} but its last unit arrives at {units[-1].terminal.id}",
                units[-1].span,
            )
        )
    return out


def lint(doc: Document) -> list[Diagnostic]:
    """Diagnostics for a parsed document, in a stable order.

    Per routeway (declaration order): unit checks, then chain checks.
    Unused trails come last.
    """
    out: list[Diagnostic] = []
    used: set[str] = set()
    for decl in doc.routeways:
        out.extend(_unit_diagnostics(decl))
        out.extend(_chain_diagnostics(decl))
        used.update(u.trail.id for u in decl.units if u.trail is not None)
    for trail in doc.trails:
        if trail.id not in used:
            out.append(warning(UNUSED_TRAIL, f"trail {trail.id!r} is never used", trail.span))
    return out


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.is_error for d in diagnostics)
