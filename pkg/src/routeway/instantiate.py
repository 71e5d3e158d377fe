"""Specializing parameterized trails and routeways (driving simulations).

Whether a hypothesis holds for the chosen values, and whether a specialized
statement is valid, are declarations supplied by the caller.  Nothing here
evaluates mathematics.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from enum import Enum

from . import templates
from .core import RouteUnit, Routeway, Substitution, Trail, Waypoint, chain_break
from .errors import BrokenChain, ExtraBinding, MissingBinding, MissingHypothesis, NoTemplates


class Verdict(str, Enum):
    VALID = "valid"
    REFUTES_GENERAL = "refutes-general"
    INCONCLUSIVE = "inconclusive"
    NO_REFUTATION = "no-refutation"


def _as_substitution(s: Mapping[str, str]) -> Substitution:
    return s if isinstance(s, Substitution) else Substitution(tuple(s.items()))


def _check_bindings(params: Sequence[str], s: Mapping[str, str], owner: str) -> None:
    missing = [p for p in params if p not in s]
    if missing:
        raise MissingBinding(f"{owner}: no binding for {', '.join(missing)}")
    extra = [k for k in s if k not in params]
    if extra:
        raise ExtraBinding(f"{owner}: {', '.join(extra)} is not a parameter")


def _specialize_waypoint(wp: Waypoint, s: Mapping[str, str]) -> Waypoint:
    return Waypoint(
        wp.id,
        tuple(templates.substitute(t, s) for t in wp.statements),
        None if wp.display is None else templates.substitute(wp.display, s),
    )


def instantiate_unit(trail: Trail, s: Mapping[str, str]) -> RouteUnit:
    """The instance of ``trail``'s general route unit under ``s``."""
    if not trail.has_templates:
        raise NoTemplates(f"trail {trail.id!r} has no premise/conclusion templates")
    _check_bindings(trail.params, s, f"trail {trail.id!r}")
    s = _as_substitution(s)
    premise = tuple(templates.substitute(t, s) for t in trail.premise_template)  # type: ignore[union-attr]
    conclusion = tuple(templates.substitute(t, s) for t in trail.conclusion_template)  # type: ignore[union-attr]
    return RouteUnit(
        Waypoint(f"{trail.id}:premise", premise),
        Waypoint(f"{trail.id}:conclusion", conclusion),
        trail,
        s,
    )


@dataclass(frozen=True)
class ParameterizedRouteway:
    routeway: Routeway
    params: tuple[str, ...]
    name: str | None = None

    def trails(self) -> tuple[Trail, ...]:
        seen: dict[str, Trail] = {}
        for u in self.routeway.units:
            if u.trail is not None:
                seen.setdefault(u.trail.id, u.trail)
        return tuple(seen.values())


@dataclass(frozen=True)
class SimulationResult:
    routeway: Routeway
    # per trail id: ((hypothesis label, declared to hold), ...)
    hypothesis_status: tuple[tuple[str, tuple[tuple[str, bool], ...]], ...]
    verdict: Verdict


def _hypothesis_status(
    trails: Sequence[Trail], hypotheses_hold: Mapping[str, bool]
) -> tuple[tuple[str, tuple[tuple[str, bool], ...]], ...]:
    status = []
    for trail in trails:
        missing = [h for h in trail.hypotheses if h not in hypotheses_hold]
        if missing:
            raise MissingHypothesis(
                f"trail {trail.id!r}: no declaration for hypothesis "
                + ", ".join(repr(h) for h in missing)
            )
        status.append((trail.id, tuple((h, bool(hypotheses_hold[h])) for h in trail.hypotheses)))
    return tuple(status)


def _specialize_unit(unit: RouteUnit, s: Substitution) -> RouteUnit:
    trail = unit.trail
    if trail is not None and trail.has_templates:
        inner = unit.substitution if unit.substitution is not None else {p: p for p in trail.params}
        composed = Substitution(tuple((k, templates.substitute(v, s)) for k, v in inner.items()))
        made = instantiate_unit(trail, composed)
        initial = Waypoint(unit.initial.id, made.initial.statements)
        terminal = Waypoint(unit.terminal.id, made.terminal.statements)
        return RouteUnit(initial, terminal, trail, composed, unit.two_way, unit.compass)
    subst = None
    if unit.substitution is not None:
        subst = Substitution(
            tuple((k, templates.substitute(v, s)) for k, v in unit.substitution.items())
        )
    return RouteUnit(
        _specialize_waypoint(unit.initial, s),
        _specialize_waypoint(unit.terminal, s),
        trail,
        subst,
        unit.two_way,
        unit.compass,
    )


def instantiate_routeway(
    template: ParameterizedRouteway,
    s: Mapping[str, str],
    hypotheses_hold: Mapping[str, bool],
    *,
    specialized_invalid: bool = False,
) -> SimulationResult:
    """Specialize every unit and re-check that the result still chains.

    Units whose trail has templates are rebuilt from those templates; other
    units have ``s`` applied to their waypoint text.  The verdict is
    ``inconclusive`` as soon as any hypothesis is declared false.
    """
    name = template.name or "routeway"
    _check_bindings(template.params, s, f"routeway {name!r}")
    s = _as_substitution(s)
    status = _hypothesis_status(template.trails(), hypotheses_hold)

    units = tuple(_specialize_unit(u, s) for u in template.routeway.units)
    start = _specialize_waypoint(template.routeway.start, s)
    end = _specialize_waypoint(template.routeway.end, s)
    problem = chain_break(units, start, end)
    if problem is not None:
        raise BrokenChain(f"after substitution in {name!r}: {problem[1]}")

    all_hold = all(ok for _, rows in status for _, ok in rows)
    if not all_hold:
        verdict = Verdict.INCONCLUSIVE
    elif specialized_invalid:
        verdict = Verdict.REFUTES_GENERAL
    else:
        verdict = Verdict.VALID
    return SimulationResult(Routeway(units, start, end), status, verdict)


@dataclass(frozen=True)
class Detection:
    verdict: Verdict
    reason: str | None = None


def detect_counterexample(
    trail: Trail,
    s: Mapping[str, str],
    hypotheses_hold: Mapping[str, bool],
    specialized_invalid: bool,
) -> Detection:
    """Refute a universal trail from one declared-invalid specialization.

    Only an instance satisfying every stated hypothesis can refute; otherwise
    the instance says nothing about the general statement.
    """
    _check_bindings(trail.params, s, f"trail {trail.id!r}")
    ((_, rows),) = _hypothesis_status([trail], hypotheses_hold)
    if not all(ok for _, ok in rows):
        return Detection(Verdict.NO_REFUTATION, "hypothesis-not-satisfied")
    if specialized_invalid:
        return Detection(Verdict.REFUTES_GENERAL)
    return Detection(Verdict.NO_REFUTATION, "instance-valid")
