"""``routeway`` command line.

Exit codes: 0 success, 1 lint errors, 2 the file could not be read or parsed,
3 a query failed.  Failures print one ``error[code]: message`` line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from . import geometry
from .core import Routeway, Waypoint, atlas_coverage
from .diagnostics import Diagnostic
from .dsl import Document, ParseError, has_errors, lint, parse
from .errors import RoutewayError
from .export import export_dot, export_graph, export_json, roadmap_subgraph
from .instantiate import detect_counterexample, instantiate_routeway
from .refine import presentation_equivalent, refines

EXIT_OK, EXIT_LINT, EXIT_PARSE, EXIT_QUERY = 0, 1, 2, 3

_TRUE = {"true", "yes", "1", "t", "y"}
_FALSE = {"false", "no", "0", "f", "n"}


class _Failure(Exception):
    def __init__(self, exit_code: int, code: str, message: str) -> None:
        super().__init__(message)
        self.exit_code = exit_code
        self.code = code
        self.message = message


def _emit(args: argparse.Namespace, payload: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        for line in lines:
            print(line)


def _load(path: str) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            source = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise _Failure(EXIT_PARSE, "io-error", f"cannot read {path}: {exc}") from None
    return parse(source)


def _print_parse_failure(path: str, diagnostics: list[Diagnostic]) -> None:
    for d in diagnostics:
        print(d.format(path), file=sys.stderr)


def _wp(doc: Document, name: str) -> Waypoint:
    return doc.waypoint(name)


def _unit_json(unit) -> dict:
    return {
        "from": unit.initial.id,
        "to": unit.terminal.id,
        "trail": None if unit.trail is None else unit.trail.id,
        "substitution": None if unit.substitution is None else dict(unit.substitution),
        "two_way": unit.two_way,
    }


def _unit_text(unit) -> str:
    if unit.trail is None:
        arrow = "=>"
    else:
        inner = unit.trail.id
        if unit.substitution is not None:
            inner += " with " + ", ".join(f"{k}=:{v}" for k, v in unit.substitution.items())
        arrow = ("<=[" if unit.two_way else "=[") + inner + "]=>"
    return f"{unit.initial.id} {arrow} {unit.terminal.id}"


def _routeway_json(rw: Routeway) -> dict:
    return {
        "start": rw.start.id,
        "end": rw.end.id,
        "length": rw.length,
        "units": [_unit_json(u) for u in rw.units],
    }


# -- commands ---------------------------------------------------------------


def cmd_lint(args: argparse.Namespace) -> int:
    try:
        doc = _load(args.file)
    except ParseError as exc:
        if args.json:
            payload = {
                "file": args.file,
                "parsed": False,
                "diagnostics": [d.to_json() for d in exc.diagnostics],
                "errors": len(exc.diagnostics),
                "warnings": 0,
            }
            print(json.dumps(payload, indent=2, ensure_ascii=False))
        else:
            _print_parse_failure(args.file, exc.diagnostics)
        return EXIT_PARSE
    diags = lint(doc)
    errors = sum(d.is_error for d in diags)
    payload = {
        "file": args.file,
        "parsed": True,
        "diagnostics": [d.to_json() for d in diags],
        "errors": errors,
        "warnings": len(diags) - errors,
    }
    lines = [d.format(args.file) for d in diags]
    lines.append(f"{errors} error(s), {len(diags) - errors} warning(s)")
    _emit(args, payload, lines)
    return EXIT_LINT if has_errors(diags) else EXIT_OK


def cmd_dist(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    graph = doc.graph(args.basefield)
    a, b = _wp(doc, args.source), _wp(doc, args.target)
    d = geometry.distance(graph, a, b)
    payload = {"basefield": graph.basefield.id, "from": a.id, "to": b.id, "distance": d.to_json()}
    _emit(args, payload, [str(d)])
    return EXIT_OK


def cmd_geodesic(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    graph = doc.graph(args.basefield)
    a, b = _wp(doc, args.source), _wp(doc, args.target)
    d = geometry.distance(graph, a, b)
    path = geometry.geodesic(graph, a, b)
    payload = {
        "basefield": graph.basefield.id,
        "from": a.id,
        "to": b.id,
        "distance": d.to_json(),
        "geodesic": None if path is None else _routeway_json(path),
    }
    if path is None:
        lines = [f"no routeway from {a.id} to {b.id} (distance ∞)"]
    else:
        lines = [f"distance {d}"] + [_unit_text(u) for u in path.units]
    _emit(args, payload, lines)
    return EXIT_OK


def _by_distance(graph, a: Waypoint, points) -> list[Waypoint]:
    levels = geometry.distances_from(graph, a)
    return sorted(points, key=lambda w: (levels.get(w, float("inf")), w.id))


def cmd_interval(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    graph = doc.graph(args.basefield)
    a, b = _wp(doc, args.source), _wp(doc, args.target)
    members = _by_distance(graph, a, geometry.interval(graph, a, b))
    payload = {
        "basefield": graph.basefield.id,
        "from": a.id,
        "to": b.id,
        "distance": geometry.distance(graph, a, b).to_json(),
        "interval": [w.id for w in members],
    }
    _emit(args, payload, [w.id for w in members])
    return EXIT_OK


def cmd_excess(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    graph = doc.graph(args.basefield)
    f, a, b = _wp(doc, args.via), _wp(doc, args.source), _wp(doc, args.target)
    value = geometry.excess(graph, f, a, b)
    perfect = geometry.is_perfect(graph, f, a, b)
    essential = geometry.is_essential(graph, f, a, b)
    payload = {
        "basefield": graph.basefield.id,
        "via": f.id,
        "from": a.id,
        "to": b.id,
        "excess": value,
        "perfect": perfect,
        "essential": essential,
    }
    lines = [f"excess {value}", f"perfect {str(perfect).lower()}", f"essential {str(essential).lower()}"]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_closure(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    graph = doc.graph(args.basefield)
    anchors = [_wp(doc, n) for n in args.anchors]
    members = geometry.closure(graph, anchors)
    dist = {w: geometry.anchor_distance(graph, anchors, w) for w in members}
    ordered = sorted(members, key=lambda w: (dist[w].value, w.id))
    payload = {
        "basefield": graph.basefield.id,
        "anchors": [w.id for w in anchors],
        "closure": [{"waypoint": w.id, "anchor_distance": dist[w].to_json()} for w in ordered],
    }
    _emit(args, payload, [f"{w.id}\t{dist[w]}" for w in ordered])
    return EXIT_OK


def cmd_refines(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    gamma, eta = doc.routeway(args.gamma), doc.routeway(args.eta)
    witness = refines(gamma, eta)
    equivalent = presentation_equivalent(gamma, eta)
    payload = {
        "gamma": args.gamma,
        "eta": args.eta,
        "refines": witness is not None,
        "witness": None if witness is None else witness.to_json(),
        "presentation_equivalent": equivalent,
    }
    if witness is None:
        lines = [f"{args.eta} does not refine {args.gamma}"]
    else:
        lines = [f"{args.eta} refines {args.gamma}"]
        lines += [f"  unit {i} -> units [{lo}, {hi})" for i, (lo, hi) in witness.blocks]
    lines.append(f"presentation-equivalent {str(equivalent).lower()}")
    _emit(args, payload, lines)
    return EXIT_OK


def _bindings(pairs: Sequence[str]) -> dict[str, str]:
    out: dict[str, str] = {}
    for item in pairs:
        name, sep, term = item.partition("=:")
        if not sep or not name.strip() or not term.strip():
            raise _Failure(EXIT_QUERY, "bad-binding", f"binding {item!r} is not of the form name=:term")
        if name.strip() in out:
            raise _Failure(EXIT_QUERY, "bad-binding", f"parameter {name.strip()!r} is bound twice")
        out[name.strip()] = term.strip()
    return out


def _hypotheses(items: Sequence[str]) -> dict[str, bool]:
    out: dict[str, bool] = {}
    for item in items:
        label, sep, value = item.rpartition("=")
        flag = value.strip().lower()
        if not sep or not label or flag not in _TRUE | _FALSE:
            raise _Failure(
                EXIT_QUERY, "bad-hypothesis", f"hypothesis {item!r} is not of the form label=true|false"
            )
        out[label] = flag in _TRUE
    return out


def cmd_simulate(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    template = doc.routeway_decl(args.template).parameterized()
    s = _bindings(args.bind)
    result = instantiate_routeway(
        template, s, _hypotheses(args.hyp), specialized_invalid=args.invalid
    )
    rw = result.routeway
    payload = {
        "template": args.template,
        "bindings": s,
        "verdict": result.verdict.value,
        "hypotheses": [
            {"trail": trail, "hypothesis": h, "holds": ok}
            for trail, rows in result.hypothesis_status
            for h, ok in rows
        ],
        "routeway": {
            **_routeway_json(rw),
            "waypoints": [{"id": w.id, "statements": list(w.statements)} for w in rw.waypoints],
        },
    }
    lines = [f"verdict {result.verdict.value}"]
    for u in rw.units:
        lines.append(f"{u.initial.label}  =>  {u.terminal.label}   [{u.trail.id if u.trail else '-'}]")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_counterexample(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    trail = doc.trail(args.trail)
    s = _bindings(args.bind)
    found = detect_counterexample(trail, s, _hypotheses(args.hyp), args.invalid)
    payload = {"trail": trail.id, "bindings": s, "verdict": found.verdict.value, "reason": found.reason}
    line = found.verdict.value + (f" ({found.reason})" if found.reason else "")
    _emit(args, payload, [line])
    return EXIT_OK


def cmd_coverage(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    atlas = doc.atlas(args.atlas)
    report = atlas_coverage(atlas)
    decl = next(a for a in doc.atlases if a.name == atlas.name)
    targets = []
    lines = []
    for entry in report.entries:
        roadmap = routeway = None
        if entry.covered:
            roadmap = decl.roadmaps[entry.roadmap_index]  # type: ignore[index]
            routeway = next(r for r in doc.roadmaps if r.name == roadmap).routeways[entry.routeway_index]  # type: ignore[index]
            lines.append(f"{entry.target.id}\tcovered by {roadmap}/{routeway}")
        else:
            lines.append(f"{entry.target.id}\tuncovered")
        targets.append(
            {"target": entry.target.id, "covered": entry.covered, "roadmap": roadmap, "routeway": routeway}
        )
    lines.append("covering" if report.covering else "not covering")
    payload = {"atlas": atlas.name, "covering": report.covering, "targets": targets}
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_filtration(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    decl = doc.filtration(args.name)
    graphs = [doc.graph(b) for b in decl.basefields]
    if args.pair:
        pairs = [(_wp(doc, a), _wp(doc, b)) for a, b in args.pair]
    else:
        points = list(dict.fromkeys(doc.waypoints))
        pairs = [(a, b) for a in points for b in points if a != b]
    report = geometry.filtration_report(graphs, pairs)
    payload = {
        "filtration": decl.name,
        "monotone": report.monotone,
        "stages": [
            {
                "basefield": stage.basefield,
                "distances": [
                    {"from": a.id, "to": b.id, "distance": d.to_json()} for a, b, d in stage.distances
                ],
            }
            for stage in report.stages
        ],
        "violations": [
            {"from": a.id, "to": b.id, "stage": i} for a, b, i in report.violations
        ],
    }
    header = "pair\t" + "\t".join(s.basefield for s in report.stages)
    lines = [header]
    for k, (a, b) in enumerate(pairs):
        lines.append(f"{a.id} -> {b.id}\t" + "\t".join(str(s.distances[k][2]) for s in report.stages))
    lines.append("monotone" if report.monotone else f"NOT monotone: {len(report.violations)} violation(s)")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    anchors = [_wp(doc, n) for n in args.anchors or ()]
    if args.roadmap:
        graph = roadmap_subgraph(doc.roadmap(args.roadmap), anchors)
    else:
        graph = export_graph(doc.graph(args.basefield), anchors)
    text = export_json(graph) if args.json else export_dot(graph)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(export_dot(graph))
        if args.json:
            sys.stdout.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    with_bf = argparse.ArgumentParser(add_help=False, parents=[common])
    with_bf.add_argument("--in", dest="basefield", metavar="BASEFIELD", help="base field (default: first declared)")

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("--from", dest="source", required=True, metavar="A")
    pair.add_argument("--to", dest="target", required=True, metavar="B")

    parser = argparse.ArgumentParser(prog="routeway", description="Route geometry for structured explanations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lint", parents=[common], help="parse and lint a document")
    p.add_argument("file")
    p.set_defaults(func=cmd_lint)

    for name, func, text in (
        ("dist", cmd_dist, "route distance from A to B"),
        ("geodesic", cmd_geodesic, "a shortest routeway from A to B"),
        ("interval", cmd_interval, "waypoints on some geodesic from A to B"),
    ):
        p = sub.add_parser(name, parents=[with_bf, pair], help=text)
        p.add_argument("file")
        p.set_defaults(func=func)

    p = sub.add_parser("excess", parents=[with_bf, pair], help="detour cost of routing A to B via F")
    p.add_argument("file")
    p.add_argument("--via", required=True, metavar="F")
    p.set_defaults(func=cmd_excess)

    p = sub.add_parser("closure", parents=[with_bf], help="waypoints reachable from the anchors")
    p.add_argument("file")
    p.add_argument("--anchors", nargs="+", required=True, metavar="W")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("refines", parents=[common], help="does routeway ETA refine GAMMA")
    p.add_argument("file")
    p.add_argument("gamma")
    p.add_argument("eta")
    p.set_defaults(func=cmd_refines)

    for name, func, target, text in (
        ("simulate", cmd_simulate, "template", "specialize a parameterized routeway"),
        ("counterexample", cmd_counterexample, "trail", "test one specialization of a trail"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file")
        p.add_argument(target)
        p.add_argument("--bind", action="append", default=[], metavar="x=:term")
        p.add_argument("--hyp", action="append", default=[], metavar="LABEL=true|false")
        p.add_argument("--invalid", action="store_true", help="declare the specialized statement invalid")
        p.set_defaults(func=func)

    p = sub.add_parser("coverage", parents=[common], help="audit an atlas against its targets")
    p.add_argument("file")
    p.add_argument("--atlas", help="atlas name (default: first declared)")
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("filtration", parents=[common], help="distances across a knowledge filtration")
    p.add_argument("file")
    p.add_argument("--name", help="filtration name (default: first declared)")
    p.add_argument("--pair", nargs=2, action="append", metavar=("A", "B"))
    p.set_defaults(func=cmd_filtration)

    p = sub.add_parser("export", aliases=["graph"], parents=[with_bf], help="DOT or JSON of the route graph")
    p.add_argument("file")
    p.add_argument("--roadmap", help="export this roadmap's subgraph instead")
    p.add_argument("--anchors", nargs="+", metavar="W")
    p.add_argument("--dot", metavar="PATH", help="write DOT to PATH")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _print_parse_failure(args.file, exc.diagnostics)
        return EXIT_PARSE
    except _Failure as exc:
        print(f"error[{exc.code}]: {exc.message}", file=sys.stderr)
        return exc.exit_code
    except RoutewayError as exc:
        print(f"error[{exc.code}]: {exc.message}", file=sys.stderr)
        return EXIT_QUERY
    except OSError as exc:
        print(f"error[io-error]: {exc}", file=sys.stderr)
        return EXIT_QUERY


if __name__ == "__main__":
    sys.exit(main())
