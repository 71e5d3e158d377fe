"""Refinement preorder on routeways.

``gamma ⪯ eta`` when eta arises from gamma by swapping route units for
nonempty routeways with the same endpoints.  Only the boundary waypoints are
constrained, so deciding it is a matching problem on waypoint sequences.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from .core import BaseField, Routeway, concat, irreducibility_failure
from .errors import BlockNotIrreducible, EndpointMismatch


@dataclass(frozen=True)
class RefinementWitness:
    """For each unit ``i`` of gamma, the half-open range of eta's units replacing it."""

    blocks: tuple[tuple[int, tuple[int, int]], ...]

    def is_valid_for(self, gamma: Routeway, eta: Routeway) -> bool:
        if len(self.blocks) != len(gamma.units):
            return False
        if not self.blocks:
            return not eta.units
        g_points, e_points = gamma.waypoints, eta.waypoints
        expected_lo = 0
        for i, (unit_index, (lo, hi)) in enumerate(self.blocks):
            if unit_index != i or lo != expected_lo or hi <= lo:
                return False
            if e_points[lo] != g_points[i] or e_points[hi] != g_points[i + 1]:
                return False
            expected_lo = hi
        return expected_lo == len(eta.units)

    def to_json(self) -> list[dict[str, int]]:
        return [{"unit": i, "start": lo, "stop": hi} for i, (lo, hi) in self.blocks]


def _check_endpoints(gamma: Routeway, eta: Routeway) -> None:
    if gamma.start != eta.start or gamma.end != eta.end:
        raise EndpointMismatch(
            f"routeways run {gamma.start.id!r} -> {gamma.end.id!r} and "
            f"{eta.start.id!r} -> {eta.end.id!r}; refinement needs shared endpoints"
        )


def refines(gamma: Routeway, eta: Routeway) -> RefinementWitness | None:
    """Witness that ``eta`` refines ``gamma``, or None.

    ``ok[i][j]`` says gamma's waypoints from ``i`` on can be matched against
    eta's waypoints from ``j`` on.  The witness then takes, block by block,
    the earliest boundary that keeps the rest matchable.
    """
    _check_endpoints(gamma, eta)
    g, e = gamma.waypoints, eta.waypoints
    n, m = len(g) - 1, len(e) - 1
    if n == 0:
        return RefinementWitness(()) if m == 0 else None

    ok = [[False] * (m + 1) for _ in range(n + 1)]
    ok[n][m] = True
    for i in range(n - 1, -1, -1):
        # position j must hold g[i]; the next boundary j' > j must hold g[i+1]
        reachable_after = False
        for j in range(m, -1, -1):
            if j < m and ok[i + 1][j + 1]:
                reachable_after = True
            ok[i][j] = reachable_after and e[j] == g[i]
    if not ok[0][0]:
        return None

    blocks = []
    j = 0
    for i in range(n):
        nxt = next(k for k in range(j + 1, m + 1) if ok[i + 1][k])
        blocks.append((i, (j, nxt)))
        j = nxt
    return RefinementWitness(tuple(blocks))


def presentation_equivalent(gamma: Routeway, eta: Routeway) -> bool:
    return refines(gamma, eta) is not None and refines(eta, gamma) is not None


def irreducible_refinement(
    gamma: Routeway, expansions: Mapping[int, Routeway], basefield: BaseField
) -> Routeway:
    """Concatenate per-unit irreducible expansions into one irreducible refinement.

    A unit with no entry in ``expansions`` stands for itself.
    """
    result = Routeway.empty(gamma.start)
    for i, unit in enumerate(gamma.units):
        block = expansions.get(i)
        if block is None:
            block = Routeway.of(unit)
        if not block.units:
            raise EndpointMismatch(f"expansion of unit {i} is empty")
        if block.start != unit.initial or block.end != unit.terminal:
            raise EndpointMismatch(
                f"expansion of unit {i} runs {block.start.id!r} -> {block.end.id!r}, "
                f"unit runs {unit.initial.id!r} -> {unit.terminal.id!r}"
            )
        for k, sub in enumerate(block.units):
            reason = irreducibility_failure(sub, basefield)
            if reason is not None:
                raise BlockNotIrreducible(
                    f"unit {k} of the expansion of unit {i} is not irreducible "
                    f"over {basefield.id!r} ({reason})"
                )
        result = concat(result, block)
    return result
