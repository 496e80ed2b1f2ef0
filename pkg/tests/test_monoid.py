import pickle

import pytest

from prelab.enumeration import fixtures
from prelab.monoid import (
    FLAGS,
    MonoidLawError,
    PLUG_FORALL_DUAL,
    adjoint_bounds_hold,
    build_monoid,
    check_frobenius,
    check_residuated,
    check_special,
    classify,
    comonoid,
    comonoid_law_failure,
    cone,
    correspondence_failure,
    example_nabla,
    frobenius_witnesses,
    from_table,
    is_pointed,
    order_from_cone,
    pregroup_adjoints,
    representation,
    residual,
    search_adjoints,
    select_residual_semantics,
    split_inclusion,
)
from prelab.order import ClosedSet, Side, discrete, principal


def test_fixture_laws():
    assert fixtures("Z2").triples() == [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert sorted(fixtures("MIN2").unit.members) == [1]


def test_empty_unit_rejected():
    with pytest.raises(MonoidLawError) as info:
        build_monoid(discrete(1), [(0, 0, 0)], [])
    assert "unit" in info.value.law


def test_associativity_failure_reported():
    # x*x = y, y*x = x on D2 with no unit is not a monoid
    with pytest.raises(MonoidLawError):
        from_table(discrete(2), [[1, 0], [0, 0]], 0)


def test_law_error_pickles():
    err = MonoidLawError("associativity", (0, 1, 0))
    back = pickle.loads(pickle.dumps(err))
    assert (back.law, back.instance) == (err.law, err.instance)


@pytest.mark.parametrize("name", ["Z2", "Z3", "trivial"])
def test_groups_have_every_flag(name):
    pv = classify(fixtures(name))
    assert all(getattr(pv, f) for f in FLAGS)
    assert pv.counterexample is None


def test_min2_vector():
    pv = classify(fixtures("MIN2"))
    assert (pv.strict, pv.pointed, pv.representable) == (True, True, True)
    assert not pv.frobenius and not pv.pregroup
    assert not pv.left_residuated and not pv.right_residuated
    assert pv.counterexample == ("frobenius", 0, 1, 0, 0)


def test_explain_picks_the_named_flag():
    pv = classify(fixtures("MIN2"), explain="pregroup")
    assert pv.counterexample == ("pregroup", 0, "left")


@pytest.mark.parametrize("name", ["G21", "two-Z2-disjoint"])
def test_non_representable_spiders(name):
    pv = classify(fixtures(name))
    assert pv.spider and not pv.pointed and not pv.pregroup


def _sequent_frobenius(M):
    """Pointwise Frobenius for representable monoids, read off the table."""
    table, _ = representation(M)
    d = M.carrier.derr
    rng = range(M.size)
    bad = []
    for x in rng:
        for y in rng:
            for u in rng:
                for v in rng:
                    if not d(table[x][y], table[u][v]):
                        continue
                    s_ok = any(d(table[x][s], u) and d(y, table[s][v]) for s in rng)
                    t_ok = any(d(x, table[u][t]) and d(table[t][y], v) for t in rng)
                    if not (s_ok and t_ok):
                        bad.append((x, y, u, v))
    return bad


def test_min2_frobenius_failures():
    bad = _sequent_frobenius(fixtures("MIN2"))
    assert bad[0] == (0, 1, 0, 0)
    assert (0, 1, 1, 0) in bad
    assert check_frobenius(fixtures("MIN2")).witness == bad[0]


def test_frobenius_matches_table_oracle(rep3_suite):
    for M in rep3_suite:
        bad = _sequent_frobenius(M)
        v = check_frobenius(M)
        assert v.holds == (not bad)
        assert v.witness == (bad[0] if bad else None)


def test_group_witness_is_inverse_product():
    pg = pregroup_adjoints(fixtures("Z3"))
    for x in range(3):
        for y in range(3):
            for u in range(3):
                v = pg.mult(pg.mult(pg.ell(u), x), y)      # forces xy = uv
                s, t = frobenius_witnesses(pg, x, y, u, v)
                assert s == {pg.mult(pg.ell(x), u)}


def test_derived_comonoid_laws(general_suite, rep3_suite):
    for M in general_suite + rep3_suite:
        assert comonoid_law_failure(M) is None


def test_special_on_representable(rep3_suite):
    assert check_special(fixtures("Z2")).holds
    for M in rep3_suite:
        assert check_special(M).holds


def test_pointed_gives_split_inclusion(general_suite, rep3_suite):
    for M in general_suite + rep3_suite:
        if is_pointed(M):
            assert split_inclusion(M).holds


def test_pointed_does_not_force_special(general_suite):
    odd = [M for M in general_suite if is_pointed(M) and not check_special(M).holds]
    assert len(odd) == 2


def test_adjoints_of_groups():
    pg = pregroup_adjoints(fixtures("Z3"))
    assert pg.ell_table == pg.arr_table == (0, 2, 1)
    assert correspondence_failure(pg) is None and adjoint_bounds_hold(pg)


def test_min2_has_no_adjoint_for_zero():
    assert search_adjoints(fixtures("MIN2")).missing == (0, "left")


def test_non_representable_has_no_table():
    assert search_adjoints(fixtures("G21")).missing == (-1, "representable")


def test_cone_recovers_order(rep3_suite):
    pregroups = [pg for pg in map(pregroup_adjoints, rep3_suite) if pg is not None]
    assert pregroups
    for pg in pregroups:
        assert adjoint_bounds_hold(pg)
        assert order_from_cone(pg, cone(pg)) == pg.carrier


def test_residual_typing():
    M = fixtures("Z2")
    low = principal(M.carrier, 1, Side.LOWER)
    assert residual(M, low, "r>").side is Side.UPPER
    assert residual(M, low, "r▷").members == residual(M, low, "r>").members
    with pytest.raises(ValueError):
        residual(M, low, "<l")
    empty = ClosedSet(M.carrier, Side.LOWER, frozenset())
    assert len(residual(M, empty, "<r")) == 0


def test_residuation_on_fixtures():
    for name in ("Z2", "trivial"):
        M = fixtures(name)
        assert check_residuated(M, "left") and check_residuated(M, "right")
    M = fixtures("MIN2")
    assert not check_residuated(M, "left") and not check_residuated(M, "right")


def test_semantics_selection(general_suite):
    sel = select_residual_semantics(general_suite)
    assert sel.selected == "exists"
    assert sel.failures == {"exists": 0, PLUG_FORALL_DUAL: 5}


def test_cached_comonoid_is_stable():
    M = fixtures("Z2")
    assert comonoid(M) is comonoid(fixtures("Z2"))


@pytest.mark.parametrize("family, x, y, z, expected", [
    ("multiset", {1: 1}, {2: 1}, {3: 1}, True),
    ("multiset", {2: 1}, {2: 1}, {3: 1}, False),
    ("shuffle", "ab", "cd", "acbd", True),
    ("shuffle", "ab", "", "a", False),
    ("shuffle", "ab", "cd", "adbc", False),
])
def test_example_families(family, x, y, z, expected):
    assert example_nabla(family, x, y, z) is expected
