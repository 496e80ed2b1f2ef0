from pathlib import Path

import pytest
from hypothesis import given, settings

from prelab.enumeration import FIXTURES, fixtures
from prelab.formats import (
    FormatError,
    dump_monoid,
    dump_piece,
    dump_prelation,
    dump_preorder,
    load_lexicon,
    load_structure,
)
from prelab.grammar import recognize
from prelab.spider import pregroup_cover
from strategies import preorders, prelations

DATA = Path(__file__).resolve().parent.parent / "data"


def test_shipped_structures_load():
    st = load_structure((DATA / "z2.struct").read_text())
    assert st.monoids[0][1] == fixtures("Z2")
    st = load_structure((DATA / "g21.struct").read_text())
    assert st.monoids[0][1] == fixtures("G21")
    assert load_structure((DATA / "min2.struct").read_text()).monoids[0][1] == fixtures("MIN2")


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_round_trip(name):
    M = fixtures(name)
    back = load_structure(dump_monoid(M)).monoids[0][1]
    assert back == M
    assert back.carrier.names == M.carrier.names


def test_general_suite_round_trip(general_suite):
    for M in general_suite:
        assert load_structure(dump_monoid(M)).monoids[0][1] == M


@given(preorders())
def test_preorder_round_trip(P):
    assert load_structure(dump_preorder(P, "P")).preorders["P"] == P


@settings(max_examples=50)
@given(prelations(max_size=3))
def test_prelation_round_trip(phi):
    text = dump_preorder(phi.dom, "A") + dump_preorder(phi.cod, "B") + dump_prelation(phi, "A", "B")
    assert load_structure(text).prelations[0][2] == phi


@pytest.mark.parametrize("name", ["G21", "two-Z2-disjoint", "Z3"])
def test_covering_components_round_trip(name):
    cover = pregroup_cover(fixtures(name))
    for c in cover.components:
        back = load_structure(dump_piece(c, cover.ambient.carrier)).monoids[0][1]
        assert back == c.pregroup.base


@pytest.mark.parametrize("text, line, message", [
    ("@preorder A\nelements: a b\nle a c\n", 3, "unknown element"),
    ("@bogus\n", 1, "unknown directive"),
    ("elements: a\n", 1, "before any directive"),
    ("@preorder A\nelements: a\n@monoid\nmul a a a\n", 3, "unit"),
    ("@preorder A\nelements: a a\n", 2, "duplicate"),
    ("@preorder A\nelements: a\n@monoid\nmul a a\n", 4, "expected"),
    ("@monoid\n", 1, "before any @preorder"),
])
def test_structure_errors_carry_lines(text, line, message):
    with pytest.raises(FormatError, match=message) as info:
        load_structure(text)
    assert info.value.line == line


def test_comments_and_blank_lines():
    text = "# header\n\n@preorder A   # name\nelements: a\n@monoid\nmul a a a\nunit a\n"
    assert load_structure(text).monoids[0][1].size == 1


def test_lexicon_file():
    lex = load_lexicon((DATA / "toy.lex").read_text())
    assert lex.target == "s"
    assert recognize(lex, "John likes Mary") is not None


def test_lexicon_order_and_repeats():
    lex = load_lexicon("@types n s q\n@order\nq <= s\n@lex\nwho : q\nwho : n\n@target s\n")
    assert lex.base_leq("q", "s") and len(lex.entries["who"]) == 2


@pytest.mark.parametrize("text, line", [
    ("@types n\n@lex\nJohn n\n@target n\n", 3),
    ("@types n\n@lex\nJohn : m\n@target n\n", 3),
    ("@types n\n@order\nn < m\n@target n\n", 3),
    ("@types n\nJohn : n\n", 2),
    ("@types n\n@lex\nJohn : n\n", 0),
])
def test_lexicon_errors(text, line):
    with pytest.raises(FormatError) as info:
        load_lexicon(text)
    assert info.value.line == line
