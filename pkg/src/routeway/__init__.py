"""Route geometry for structured mathematical explanations.

Explanations are written as routeways: chains of route units, each an
inference from one waypoint (statement) to the next, justified by a trail.
A base field fixes which trails count as single steps; the irreducible units
over it form a route graph, on which distances, geodesics, intervals and
closures are computed.
"""

from .core import (
    Atlas,
    BaseField,
    CoverageReport,
    Edge,
    Roadmap,
    RouteGraph,
    RouteUnit,
    Routeway,
    Substitution,
    Trail,
    Waypoint,
    atlas_coverage,
    build_graph,
    concat,
    is_defective,
    is_irreducible,
    is_irreducible_routeway,
)
from .diagnostics import Diagnostic, Severity, Span
from .dsl import Document, ParseError, lint, parse, serialize
from .errors import RoutewayError
from .export import ExportGraph, export_dot, export_graph, export_json, roadmap_subgraph
from .geometry import (
    INF,
    Distance,
    FiltrationReport,
    anchor_distance,
    closure,
    distance,
    excess,
    filtration_report,
    geodesic,
    geodesic_vertices,
    interval,
    is_essential,
    is_perfect,
)
from .instantiate import (
    ParameterizedRouteway,
    SimulationResult,
    Verdict,
    detect_counterexample,
    instantiate_routeway,
    instantiate_unit,
)
from .refine import RefinementWitness, irreducible_refinement, presentation_equivalent, refines

__all__ = [
    "INF",
    "Atlas",
    "BaseField",
    "CoverageReport",
    "Diagnostic",
    "Distance",
    "Document",
    "Edge",
    "ExportGraph",
    "FiltrationReport",
    "ParameterizedRouteway",
    "ParseError",
    "RefinementWitness",
    "Roadmap",
    "RouteGraph",
    "RouteUnit",
    "Routeway",
    "RoutewayError",
    "Severity",
    "SimulationResult",
    "Span",
    "Substitution",
    "Trail",
    "Verdict",
    "Waypoint",
    "anchor_distance",
    "atlas_coverage",
    "build_graph",
    "closure",
    "concat",
    "detect_counterexample",
    "distance",
    "excess",
    "export_dot",
    "export_graph",
    "export_json",
    "filtration_report",
    "geodesic",
    "geodesic_vertices",
    "instantiate_routeway",
    "instantiate_unit",
    "interval",
    "irreducible_refinement",
    "is_defective",
    "is_essential",
    "is_irreducible",
    "is_irreducible_routeway",
    "is_perfect",
    "lint",
    "parse",
    "presentation_equivalent",
    "refines",
    "roadmap_subgraph",
    "serialize",
]
