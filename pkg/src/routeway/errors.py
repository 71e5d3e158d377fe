"""Exception hierarchy.

Every engine error carries a stable, machine-greppable ``code`` so the CLI can
print ``error[<code>]: <message>`` without inspecting exception types.
"""

from __future__ import annotations


class RoutewayError(Exception):
    code = "routeway-error"

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message


class InvalidObject(RoutewayError, ValueError):
    """A domain object was constructed in violation of its invariants."""

    code = "invalid-object"


class EndpointMismatch(RoutewayError):
    code = "endpoint-mismatch"


class BrokenChain(RoutewayError):
    code = "broken-chain"


class UnknownTrail(RoutewayError):
    code = "unknown-trail"


class DuplicateWaypoint(RoutewayError):
    code = "duplicate-waypoint-id"


class InfiniteDistance(RoutewayError):
    code = "infinite-distance"


class EmptyAnchorSet(RoutewayError):
    code = "empty-anchor-set"


class NonMonotoneBasefields(RoutewayError):
    code = "non-monotone-basefields"


class BlockNotIrreducible(RoutewayError):
    code = "block-not-irreducible"


class MissingBinding(RoutewayError):
    code = "missing-binding"


class ExtraBinding(RoutewayError):
    code = "extra-binding"


class NoTemplates(RoutewayError):
    code = "no-templates"


class MissingHypothesis(RoutewayError):
    code = "missing-hypothesis-declaration"


class UnknownName(RoutewayError, KeyError):
    """Lookup of an undeclared name in a parsed document."""

    code = "unknown-name"

    def __str__(self) -> str:
        return self.message
