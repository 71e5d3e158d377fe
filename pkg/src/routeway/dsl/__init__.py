"""The ``.rwy`` text format: parser, linter and serializer."""

from .document import AtlasDecl, Document, FiltrationDecl, RoadmapDecl, RoutewayDecl
from .lint import BROKEN_CHAIN, LINT_CODES, UNUSED_TRAIL, UNVERIFIABLE_SINGLE_APPLICATION, has_errors, lint
from .parser import (
    DUPLICATE_IDENTIFIER,
    INVALID_DECLARATION,
    SYNTAX_ERROR,
    UNRESOLVED_REFERENCE,
    ParseError,
    parse,
)
from .serialize import HEADER, serialize

__all__ = [
    "AtlasDecl",
    "BROKEN_CHAIN",
    "DUPLICATE_IDENTIFIER",
    "Document",
    "FiltrationDecl",
    "HEADER",
    "INVALID_DECLARATION",
    "LINT_CODES",
    "ParseError",
    "RoadmapDecl",
    "RoutewayDecl",
    "SYNTAX_ERROR",
    "UNRESOLVED_REFERENCE",
    "UNUSED_TRAIL",
    "UNVERIFIABLE_SINGLE_APPLICATION",
    "has_errors",
    "lint",
    "parse",
    "serialize",
]
