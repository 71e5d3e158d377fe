import random

from checks import (
    closure_violations,
    concat_violations,
    interval_oracle_violations,
    lemma_violations,
    monotonicity_violations,
    nested_basefields,
    refinement_violations,
    unit_pool,
)
from generators import TRAILS, chains, graphs, random_units
from hypothesis import given, settings
from hypothesis import strategies as st

from routeway.core import BaseField, Routeway, Trail, build_graph
from routeway.dsl import ParseError, parse
from routeway.errors import EndpointMismatch
from routeway.instantiate import Verdict, detect_counterexample
from routeway.refine import refines
from routeway.templates import substitute

seeds = st.integers(0, 2**32 - 1)


@given(graphs(), seeds)
def test_graph_lemmas(gp, seed):
    graph, _ = gp
    assert lemma_violations(random.Random(seed), graph, samples=4) == []


@given(graphs(max_vertices=6, max_edges=14))
def test_interval_matches_walk_enumeration(gp):
    assert interval_oracle_violations(gp[0]) == []


@given(seeds)
def test_basefield_monotonicity(seed):
    rng = random.Random(seed)
    units = unit_pool(rng, rng.randint(0, 30))
    assert monotonicity_violations(units, *nested_basefields(rng)) == []


@given(graphs(), seeds)
def test_closure_axioms(gp, seed):
    graph, points = gp
    assert closure_violations(random.Random(seed), graph, points) == []


@given(seeds)
def test_refinement_preorder(seed):
    assert refinement_violations(random.Random(seed)) == []


@given(seeds)
def test_concatenation_laws(seed):
    assert concat_violations(random.Random(seed)) == []


@given(chains(), chains())
def test_refinement_never_shortens(gamma, eta):
    try:
        witness = refines(gamma, eta)
    except EndpointMismatch:
        return
    if witness is not None:
        assert gamma.length <= eta.length
        assert witness.is_valid_for(gamma, eta)


@given(chains())
def test_slices_rebuild_the_routeway(gamma):
    for k in range(gamma.length + 1):
        left, right = gamma.slice(0, k), gamma.slice(k, gamma.length)
        assert left.units + right.units == gamma.units
        assert Routeway(left.units + right.units, left.start, right.end) == gamma


@given(seeds)
def test_build_is_deterministic_and_doubles_two_way_units(seed):
    rng = random.Random(seed)
    _, units = random_units(rng, rng.randint(1, 8), rng.randint(0, 20))
    bf = BaseField("B", TRAILS)
    g = build_graph(units, bf)
    assert g == build_graph(list(units), bf)
    assert [e.sort_key for e in g.edges] == [e.sort_key for e in build_graph(units, bf).edges]
    assert len(g.edges) == sum(2 if u.two_way else 1 for u in units)


@given(st.text(alphabet="abd <>=+-*()0123456789", max_size=20), st.dictionaries(
    st.sampled_from(["x", "y", "c"]), st.sampled_from(["a", "2", "b+1"])))
def test_substitution_leaves_parameter_free_text_alone(text, bindings):
    assert substitute(text, bindings) == text


@given(st.dictionaries(st.sampled_from(["h1", "h2", "h3"]), st.booleans(), min_size=3), st.booleans())
def test_detector_never_refutes_under_a_false_hypothesis(hyps, invalid):
    trail = Trail("T", "t", ("x",), ("h1", "h2", "h3"), ("{x}>0",), ("{x}>=0",))
    result = detect_counterexample(trail, {"x": "a"}, hyps, invalid)
    expected = Verdict.REFUTES_GENERAL if all(hyps.values()) and invalid else Verdict.NO_REFUTATION
    assert result.verdict == expected


@settings(max_examples=300)
@given(st.text(max_size=120))
def test_parse_is_total_on_arbitrary_text(source):
    try:
        parse(source)
    except ParseError as err:
        assert err.diagnostics
        assert all(d.code and d.span is not None for d in err.diagnostics)


@given(st.text(alphabet="waypointrouteyfmbs{}[]()=<>:,\"\n A1", max_size=80))
def test_diagnostics_are_stable(source):
    def run():
        try:
            parse(source)
            return None
        except ParseError as err:
            return [(d.code, d.span, d.message) for d in err.diagnostics]

    assert run() == run()
