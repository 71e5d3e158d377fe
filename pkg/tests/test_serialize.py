import random

import pytest
from conftest import FIXTURES, load
from generators import fingerprint, random_document_source

from routeway.dsl import HEADER, Document, parse, serialize

FIXTURE_NAMES = sorted(p.name for p in FIXTURES.glob("*.rwy"))


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_round_trip(name):
    doc = load(name)
    text = serialize(doc)
    again = parse(text)
    assert again == doc and fingerprint(again) == fingerprint(doc)
    assert serialize(again) == text


def test_empty_document_is_header_only():
    assert serialize(Document()) == HEADER + "\n"
    assert parse(serialize(Document())) == Document()


def test_two_way_arrow_survives():
    text = serialize(load("finite_domain.rwy"))
    assert "A1 <=[def_ma]=> A2" in text


def test_escapes_survive():
    doc = parse('waypoint W: "say \\"hi\\"\\n\\ttab \\\\ done"\n')
    assert parse(serialize(doc)).waypoint("W").statements == doc.waypoint("W").statements


def test_terms_quoted_only_when_needed():
    src = ('trail T(x, y, z): "t"\nbasefield B { include T }\nwaypoint A: "a"\n'
           'routeway r in B from A to A { A =[T with x=:k, y=:-2.5, z="2a b"]=> A }\n')
    text = serialize(parse(src.replace('z="2a b"', 'z=:"2a b"')))
    assert 'x=:k, y=:-2.5, z=:"2a b"' in text


def test_declaration_order_preserved():
    text = serialize(load("school.rwy"))
    assert text.index("routeway p_route") < text.index("routeway q_route")
    assert text.index("atlas first_week") < text.index("atlas with_library")


@pytest.mark.parametrize("seed", range(25))
def test_generated_round_trip(seed):
    doc = parse(random_document_source(random.Random(seed)))
    text = serialize(doc)
    assert fingerprint(parse(text)) == fingerprint(doc)
