
import pytest
from hypothesis import given, settings, strategies as st

from prelab.grammar import (
    GrammarError,
    ReductionTrace,
    SimpleType,
    all_traces,
    contracts,
    format_types,
    make_lexicon,
    oracle_recognize,
    oracle_reduces,
    parse_arcs,
    parse_type,
    recognize,
    reduce_types,
    render_trace,
    trace_problems,
)

T = SimpleType


@pytest.fixture
def toy():
    return make_lexicon(["n", "s"], [], {"John": ["n"], "Mary": ["n"],
                                        "likes": ["n^r s n^l"]}, "s")


def test_parse_type():
    assert parse_type("n^r s n^l") == (T("n", 1), T("s", 0), T("n", -1))
    assert parse_type("n^(−2)") == (T("n", -2),)
    assert parse_type("n^ll") == (T("n", -2),)
    for bad in ("q^x", "", "n^(3", "n^rrrr"):
        with pytest.raises(GrammarError):
            parse_type(bad)
    with pytest.raises(GrammarError, match="undeclared"):
        parse_type("q", basics=["n"])


def test_format_round_trip():
    ts = parse_type("n^r s n^ll")
    assert parse_type(format_types(ts)) == ts


def test_contractions():
    flat = lambda p, q: p == q
    assert contracts(T("p", 0), T("p", 1), flat)
    assert not contracts(T("p", 1), T("p", 0), flat)
    leq = lambda p, q: p == q or (p, q) == ("p", "q")
    assert contracts(T("p", 0), T("q", 1), leq)
    assert not contracts(T("q", 0), T("p", 1), leq)
    assert contracts(T("q", -1), T("p", 0), leq)     # odd exponent flips the order


def test_toy_sentence(toy):
    t = recognize(toy, "John likes Mary")
    assert [(i + 1, j + 1) for i, j in t.links] == [(1, 2), (4, 5)]
    assert t.residual + 1 == 3 and t.types[t.residual] == T("s", 0)
    assert trace_problems(t, toy, "s") == []
    assert render_trace(t) == "n n^r s n^l n\n[-]     [---]"
    assert parse_arcs(render_trace(t)) == ((0, 1), (3, 4))


GOLDEN = {
    "John likes Mary": True, "Mary likes John": True,
    "likes John": False, "John Mary": False, "John likes": False,
    "John": False, "likes": False, "John likes Mary John": False,
}


@pytest.mark.parametrize("sentence, accepted", sorted(GOLDEN.items()))
def test_golden_table(toy, sentence, accepted):
    assert (recognize(toy, sentence) is not None) is accepted
    assert oracle_recognize(toy, sentence) is accepted


def test_residual_only():
    lex = make_lexicon(["s"], [], {"John": ["s"]}, "s")
    t = recognize(lex, "John")
    assert t.links == () and render_trace(t) == "s"


def test_base_order_lets_subtypes_through():
    lex = make_lexicon(["n", "s", "q"], [("q", "s")], {"who": ["q"]}, "s")
    assert recognize(lex, "who") is not None
    assert recognize(make_lexicon(["n", "s", "q"], [], {"who": ["q"]}, "s"), "who") is None


def test_ambiguity_first_accept_and_all():
    lex = make_lexicon(["n", "s"], [], {"saw": ["n", "n^r s"], "I": ["n"]}, "s")
    t = recognize(lex, "I saw")
    assert format_types(t.types) == "n n^r s"
    assert len(list(all_traces(lex, "I saw"))) == 1


def test_errors(toy):
    with pytest.raises(GrammarError, match="unknown word"):
        recognize(toy, "John sleeps")
    with pytest.raises(GrammarError, match="empty lexicon"):
        oracle_recognize(make_lexicon(["s"], [], {}, "s"), "x")
    with pytest.raises(GrammarError):
        make_lexicon(["n"], [], {}, "s")


simple = st.builds(T, st.sampled_from("pqr"), st.integers(-2, 2))


@settings(max_examples=300, deadline=None)
@given(st.lists(simple, min_size=1, max_size=6), st.sampled_from("pqr"),
       st.lists(st.tuples(st.sampled_from("pqr"), st.sampled_from("pqr")), max_size=3))
def test_recognizer_agrees_with_oracle(ts, target, order):
    lex = make_lexicon(list("pqr"), order, {}, "p")
    got = reduce_types(ts, lex, target)
    assert (got is not None) == oracle_reduces(ts, lex, T(target, 0))
    if got is not None:
        trace = ReductionTrace(got[0], got[1], (tuple(ts),))
        assert trace_problems(trace, lex, target) == []


def test_oracle_length_limit():
    with pytest.raises(GrammarError, match="limit"):
        oracle_reduces([T("p", 0)] * 9, lambda a, b: a == b, T("p", 0))
