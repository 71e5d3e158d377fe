import pytest
from oracles import minimal_walks

from routeway.core import BaseField, RouteUnit, Trail, Waypoint, build_graph
from routeway.errors import EmptyAnchorSet, InfiniteDistance, NonMonotoneBasefields
from routeway.geometry import (
    INF,
    Distance,
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

P, Q = Trail("P", "p"), Trail("Q", "q")
BF = BaseField("B", (P, Q))
A, B, C, F, B1, B2, X = (Waypoint(n, n) for n in ("A", "B", "C", "F", "B1", "B2", "X"))


def graph(*pairs, trail=P):
    return build_graph([RouteUnit(s, t, trail) for s, t in pairs], BF)


CHAIN = graph((A, B), (B, C))
DETOUR = graph((A, B), (A, F), (F, B))
DIAMOND = graph((A, B1), (B1, C), (A, B2), (B2, C))


class TestDistance:
    def test_arithmetic(self):
        assert Distance(2) + 3 == 5
        assert Distance(2) + INF == INF and INF + 1 == INF
        assert Distance(7) < INF and not INF < INF
        assert str(INF) == "∞" and INF.to_json() == "inf" and Distance(3).to_json() == 3

    def test_value_of_infinity_raises(self):
        with pytest.raises(InfiniteDistance):
            INF.value

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            Distance(-1)


class TestDistanceQueries:
    def test_group_chain(self, group_doc):
        g = group_doc.graph("B1")
        assert distance(g, group_doc.waypoint("W_order"), group_doc.waypoint("W_solvable")) == 3

    def test_self_distance_zero(self):
        assert distance(CHAIN, B, B) == 0

    def test_directed(self):
        assert distance(CHAIN, B, A) == INF

    def test_absent_waypoint_is_isolated(self):
        assert distance(CHAIN, X, X) == 0 and distance(CHAIN, A, X) == INF


class TestGeodesic:
    def test_group_chain_is_the_geodesic(self, group_doc):
        g = group_doc.graph("B1")
        path = geodesic(g, group_doc.waypoint("W_order"), group_doc.waypoint("W_solvable"))
        assert path == group_doc.routeway("gamma")

    def test_trivial_and_missing(self):
        assert geodesic(CHAIN, A, A).length == 0
        assert geodesic(CHAIN, C, A) is None

    def test_tie_break_by_trail_then_source(self):
        g = build_graph(
            [RouteUnit(A, B2, Q), RouteUnit(B2, C, Q), RouteUnit(A, B1, P), RouteUnit(B1, C, Q)], BF
        )
        path = geodesic(g, A, C)
        # both last steps use Q; B1 < B2 by id
        assert [u.initial.id for u in path.units] == ["A", "B1"]
        g2 = build_graph([RouteUnit(A, C, Q), RouteUnit(A, C, P)], BF)
        assert geodesic(g2, A, C).units[0].trail == P


class TestInterval:
    def test_chain(self):
        assert interval(CHAIN, A, C) == {A, B, C}

    def test_detour_excluded(self):
        assert interval(DETOUR, A, B) == {A, B}
        _, walks = minimal_walks(DETOUR.vertices, [(e.source, e.target) for e in DETOUR.edges], A, B)
        assert {v for w in walks for v in w} == {A, B}

    def test_trivial(self):
        assert interval(CHAIN, A, A) == {A}

    def test_infinite(self):
        with pytest.raises(InfiniteDistance):
            interval(CHAIN, C, A)
        with pytest.raises(InfiniteDistance):
            geodesic_vertices(CHAIN, C, A)


class TestExcess:
    def test_detour(self):
        assert excess(DETOUR, F, A, B) == 1

    def test_on_geodesic(self):
        assert excess(CHAIN, B, A, C) == 0

    def test_endpoint(self):
        assert excess(CHAIN, A, A, B) == 0

    def test_names_infinite_legs(self):
        with pytest.raises(InfiniteDistance) as info:
            excess(CHAIN, X, A, C)
        assert "d(A, X)" in str(info.value) and "d(X, C)" in str(info.value)
        assert "d(A, C)" not in str(info.value)


class TestPerfectEssential:
    def test_chain_middle(self):
        assert is_essential(CHAIN, B, A, C) and is_perfect(CHAIN, B, A, C)

    def test_diamond(self):
        assert is_perfect(DIAMOND, B1, A, C) and not is_essential(DIAMOND, B1, A, C)

    def test_endpoints_essential(self):
        assert is_essential(DIAMOND, A, A, C) and is_essential(DIAMOND, C, A, C)

    def test_longer_detour_does_not_save_f(self):
        g = graph((A, B), (B, C), (A, X), (X, F), (F, C))
        assert is_essential(g, B, A, C)

    def test_requires_finite(self):
        with pytest.raises(InfiniteDistance):
            is_essential(CHAIN, B, C, A)


class TestAnchors:
    def test_school(self, school_doc):
        doc = school_doc
        g = doc.graph("B1")
        f, school = doc.waypoint("F"), doc.waypoint("School")
        assert anchor_distance(g, [f], school) == distance(g, f, school) == 2
        assert school in closure(g, [f])

    def test_member_is_zero(self):
        assert anchor_distance(CHAIN, [C, A], A) == 0

    def test_empty_anchor_set(self):
        with pytest.raises(EmptyAnchorSet):
            anchor_distance(CHAIN, [], A)

    def test_closure(self):
        assert closure(CHAIN, []) == frozenset()
        assert closure(CHAIN, [B]) == {B, C}
        assert closure(CHAIN, [X]) == {X}
        assert closure(CHAIN, closure(CHAIN, [B])) == closure(CHAIN, [B])


class TestFiltration:
    def test_shortcut_reduces_distance(self, inequality_doc):
        doc = inequality_doc
        decl = doc.filtration("learning")
        graphs = [doc.graph(b) for b in decl.basefields]
        pair = (doc.waypoint("W_ab"), doc.waypoint("W_2a2b"))
        report = filtration_report(graphs, [pair])
        assert [s.distances[0][2] for s in report.stages] == [2, 1]
        assert report.monotone

    def test_single_stage_is_plain_distance(self):
        report = filtration_report([CHAIN], [(A, C), (C, A)])
        assert [d for _, _, d in report.stages[0].distances] == [2, INF]

    def test_no_new_trails_no_change(self):
        units = [RouteUnit(A, B, P), RouteUnit(B, C, P)]
        small = BaseField("S", (P,))
        same = BaseField("S2", (), extends=small)
        report = filtration_report(
            [build_graph(units, small), build_graph(units, same)], [(A, C), (C, A), (A, B)]
        )
        first, second = report.stages
        assert [d for *_, d in first.distances] == [d for *_, d in second.distances]

    def test_shrinking_fields_rejected(self):
        units = [RouteUnit(A, B, P)]
        with pytest.raises(NonMonotoneBasefields):
            filtration_report([build_graph(units, BF), build_graph(units, BaseField("S", (P,)))], [])

    def test_flags_increase(self):
        # graphs built from different unit pools can violate monotonicity; the report says so
        big = BaseField("L", (Q,), extends=BaseField("S", (P,)))
        g1 = build_graph([RouteUnit(A, B, P)], big.extends)
        g2 = build_graph([], big)
        report = filtration_report([g1, g2], [(A, B)])
        assert not report.monotone and report.violations == ((A, B, 1),)
