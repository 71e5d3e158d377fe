"""Invariant checks shared by the property tests and the acceptance suite.

Each function returns a list of violation messages (empty when all hold).
"""

from __future__ import annotations

import random

from generators import TRAILS, plain_edges, random_chain, random_walk, refine_randomly
from oracles import INF, floyd_warshall, minimal_walks, reachable, refines_brute

from routeway.core import BaseField, RouteUnit, Routeway, Trail, Waypoint, build_graph, concat, is_irreducible
from routeway.errors import InfiniteDistance
from routeway.geometry import (
    anchor_distance,
    closure,
    distance,
    distances_from,
    excess,
    geodesic,
    interval,
    is_essential,
    is_perfect,
)
from routeway.refine import refines


def _value(d):
    return d.value if d.is_finite else INF


def lemma_violations(rng: random.Random, graph, samples: int = 12) -> list[str]:
    bad: list[str] = []
    vs = graph.vertices
    fw = floyd_warshall(vs, plain_edges(graph))
    matrix = {}
    for a in vs:
        levels = distances_from(graph, a)
        matrix[a] = {b: levels.get(b, INF) for b in vs}
        if matrix[a] != fw[a]:
            bad.append(f"distance row of {a.id} differs from Floyd-Warshall")
    for a in vs:
        for b in vs:
            dab = matrix[a][b]
            for c in vs:
                if dab > matrix[a][c] + matrix[c][b]:
                    bad.append(f"triangle {a.id} {c.id} {b.id}")
    if not vs:
        return bad

    for _ in range(samples):
        walk = random_walk(rng, graph, rng.choice(vs), rng.randint(0, 8))
        if distance(graph, walk.start, walk.end) > walk.length:
            bad.append(f"d > length for walk {walk.start.id}->{walk.end.id}")

    for _ in range(samples):
        a, b = rng.choice(vs), rng.choice(vs)
        d = distance(graph, a, b)
        g = geodesic(graph, a, b)
        if not d.is_finite:
            if g is not None:
                bad.append("geodesic returned at infinite distance")
            continue
        if g is None or g.start != a or g.end != b or g.length != d.value:
            bad.append(f"no geodesic of length {d} for {a.id}->{b.id}")
            continue
        for u in g.units:
            if not any(e.as_unit() == u for e in graph.out_edges(u.initial)):
                bad.append("geodesic unit is not an edge")
        points = g.waypoints
        for i in range(len(points)):
            for j in range(i, len(points)):
                if distance(graph, points[i], points[j]) != j - i:
                    bad.append(f"substructure fails on {a.id}->{b.id} at [{i}, {j}]")
        inside = interval(graph, a, b)
        for f in vs:
            try:
                x = excess(graph, f, a, b)
            except InfiniteDistance:
                if f in inside:
                    bad.append("interval member with an infinite leg")
                continue
            if x < 0:
                bad.append("negative excess")
            if (x == 0) != (f in inside) or (x == 0) != is_perfect(graph, f, a, b):
                bad.append(f"zero excess and interval disagree at {f.id}")
            if is_essential(graph, f, a, b) and f not in inside:
                bad.append(f"essential but not perfect at {f.id}")
    return bad


def interval_oracle_violations(graph) -> list[str]:
    bad = []
    vs = graph.vertices
    edges = plain_edges(graph)
    for a in vs:
        for b in vs:
            length, walks = minimal_walks(vs, edges, a, b)
            d = distance(graph, a, b)
            if _value(d) != length:
                bad.append(f"d({a.id},{b.id}) = {d}, walks say {length}")
                continue
            if length == INF:
                continue
            enumerated = {v for w in walks for v in w}
            if set(interval(graph, a, b)) != enumerated:
                bad.append(f"interval({a.id},{b.id}) differs from walk enumeration")
    return bad


# -- base-field monotonicity -------------------------------------------------

SHIFT = Trail("s0", "shift", ("x",), (), ("{x} < 1",), ("{x}+1 < 2",))
SWAP = Trail("s1", "swap", ("x", "y"), (), ("{x} < {y}",), ("{y} > {x}",))
TEMPLATED = (SHIFT, SWAP)
TERMS = ("a", "b", "c", "2", "n")


class _Points:
    """Waypoints by statement, each statement getting one stable id."""

    def __init__(self) -> None:
        self.ids: dict[tuple, str] = {}

    def __call__(self, *statements: str) -> Waypoint:
        key = tuple(statements)
        return Waypoint(self.ids.setdefault(key, f"p{len(self.ids)}"), key)


def unit_pool(rng: random.Random, size: int) -> list[RouteUnit]:
    """Plain units over v0..v7 mixed with templated units, some of which mismatch."""
    point = _Points()
    plain = [point(f"statement {i}") for i in range(8)]
    units = []
    for _ in range(size):
        kind = rng.random()
        if kind < 0.6:
            s, t = rng.choice(plain), rng.choice(plain)
            units.append(RouteUnit(s, t, rng.choice(TRAILS), two_way=s != t and rng.random() < 0.15))
        elif kind < 0.8:
            k = rng.choice(TERMS)
            target = k if rng.random() < 0.8 else rng.choice(TERMS)
            units.append(RouteUnit(point(f"{k} < 1"), point(f"{target}+1 < 2"), SHIFT, {"x": k}))
        else:
            x, y = rng.choice(TERMS), rng.choice(TERMS)
            ok = rng.random() < 0.8
            units.append(
                RouteUnit(point(f"{x} < {y}"), point(f"{y} > {x}" if ok else f"{x} > {y}"), SWAP, {"x": x, "y": y},
                          two_way=rng.random() < 0.2)
            )
    return units


def nested_basefields(rng: random.Random) -> tuple[BaseField, BaseField]:
    every = list(TRAILS + TEMPLATED)
    small = rng.sample(every, rng.randint(0, len(every)))
    extra = [t for t in every if t not in small and rng.random() < 0.5]
    b = BaseField("B", tuple(small))
    wide = BaseField("B'", tuple(extra), extends=b) if rng.random() < 0.5 else BaseField("B'", tuple(small + extra))
    return b, wide


def monotonicity_violations(units, b: BaseField, wide: BaseField) -> list[str]:
    bad = []
    g, g_wide = build_graph(units, b), build_graph(units, wide)
    points = list(dict.fromkeys(w for u in units for w in (u.initial, u.terminal)))
    for a in points:
        near, far = distances_from(g, a), distances_from(g_wide, a)
        for t in points:
            if far.get(t, INF) > near.get(t, INF):
                bad.append(f"d grew from {a.id} to {t.id}")
    for u in units:
        if is_irreducible(u, b) and not is_irreducible(u, wide):
            bad.append("irreducible unit lost in the wider base field")
    return bad


# -- closure -----------------------------------------------------------------

def closure_violations(rng: random.Random, graph, points) -> list[str]:
    bad = []
    s = rng.sample(points, rng.randint(1, len(points)))
    t = list(dict.fromkeys(s + rng.sample(points, rng.randint(0, len(points)))))
    cs, ct = closure(graph, s), closure(graph, t)
    if not set(s) <= cs:
        bad.append("not extensive")
    if not cs <= ct:
        bad.append("not monotone")
    if closure(graph, cs) != cs:
        bad.append("not idempotent")
    if set(cs) != reachable(graph.vertices, plain_edges(graph), s):
        bad.append("differs from reachability oracle")
    universe = set(graph.vertices) | set(points)
    if set(cs) != {x for x in universe if anchor_distance(graph, s, x).is_finite}:
        bad.append("differs from finite anchor distance")
    return bad


# -- refinement and concatenation --------------------------------------------

def refinement_violations(rng: random.Random) -> list[str]:
    """Reflexivity, transitivity and length monotonicity on one constructed chain."""
    bad = []
    gamma = random_chain(rng, max_len=5)
    eta = refine_randomly(rng, gamma)
    zeta = refine_randomly(rng, eta)
    if refines(gamma, gamma) is None:
        bad.append("not reflexive")
    for lo, hi in ((gamma, eta), (eta, zeta), (gamma, zeta)):
        w = refines(lo, hi)
        if w is None or not w.is_valid_for(lo, hi):
            bad.append("constructed refinement not witnessed")
        elif lo.length > hi.length:
            bad.append("refinement shortened a routeway")
    other = random_chain(rng, gamma.start, gamma.end, max_len=6)
    for x, y in ((gamma, other), (other, gamma)):
        w = refines(x, y)
        if (w is not None) != refines_by_oracle(x, y):
            bad.append("refines disagrees with the brute-force oracle")
        if w is not None and x.length > y.length:
            bad.append("witnessed pair shortened")
    return bad


def refines_by_oracle(gamma: Routeway, eta: Routeway) -> bool:
    return refines_brute(gamma.waypoints, eta.waypoints)


def concat_violations(rng: random.Random) -> list[str]:
    bad = []
    a = random_chain(rng, max_len=4)
    b = random_chain(rng, start=a.end, max_len=4)
    c = random_chain(rng, start=b.end, max_len=4)
    if concat(concat(a, b), c) != concat(a, concat(b, c)):
        bad.append("not associative")
    for r in (a, b, c):
        if concat(Routeway.empty(r.start), r) != r or concat(r, Routeway.empty(r.end)) != r:
            bad.append("empty routeway is not an identity")
    if concat(concat(a, b), c).length != a.length + b.length + c.length:
        bad.append("length not additive")
    return bad

