import itertools

import numpy as np
import pytest

from prelab.enumeration import (
    FIXTURES,
    CatalogConfig,
    catalog,
    closed_relations,
    fixtures,
    general_monoids,
    representable_monoids,
    sampled_monoids,
    subjects,
)
from prelab.monoid import is_pointed, is_strict, law_failure
from prelab.order import SizeLimitError, chain, completion, discrete, enumerate_preorders, Side


def _brute_general(P):
    """Direct filter: every ternary relation times every nonempty lower-set unit."""
    n = P.size
    units = [U for U in completion(P, Side.LOWER) if len(U)]
    found = set()
    for bits in itertools.product((False, True), repeat=n ** 3):
        nabla = np.array(bits, dtype=bool).reshape(n, n, n)
        for U in units:
            if law_failure(P, nabla, U.members) is None:
                found.add((nabla.tobytes(), U.members))
    return found


@pytest.mark.parametrize("P", [discrete(1), discrete(2), chain(2)])
def test_general_matches_brute_force(P):
    got = {(M.nabla.tobytes(), M.unit.members) for M in general_monoids(P)}
    assert got == _brute_general(P)


def test_small_counts():
    assert sum(1 for _ in general_monoids(discrete(1))) == 1
    assert sum(1 for _ in representable_monoids(discrete(2))) == 4
    assert len(subjects(2, "general")) == 17
    assert sum(1 for P in enumerate_preorders(3) for _ in representable_monoids(P)) == 238


def test_representables_inside_general():
    for P in enumerate_preorders(2):
        general = set(general_monoids(P))
        reps = list(representable_monoids(P))
        assert set(reps) <= general
        assert len(set(reps)) == len(reps)
        assert {M for M in general if is_strict(M) and is_pointed(M)} == set(reps)


def test_closed_relations_are_closed():
    for nabla in closed_relations(chain(2)):
        assert nabla.shape == (2, 2, 2)


def test_guards():
    with pytest.raises(SizeLimitError):
        list(general_monoids(discrete(3)))
    with pytest.raises(SizeLimitError):
        subjects(4, "representable")


def test_sampling_is_seeded():
    P = chain(3)
    a = list(sampled_monoids(P, seed=5, count=10))
    b = list(sampled_monoids(P, seed=5, count=10))
    assert a == b and len(a) == 10
    assert len(subjects(3, "sampled", seed=1, count=50)) == 50


def test_fixtures_load():
    for name in FIXTURES:
        assert fixtures(name).size >= 1
    with pytest.raises(KeyError):
        fixtures("nope")


def test_catalog_report():
    rep = catalog(CatalogConfig(size=2, mode="general"))
    assert rep.passed and rep.total == 17 and rep.violations == []
    assert sum(sum(v.values()) for v in rep.counts.values()) == 17
    d = rep.as_dict()
    assert d["discrepancies"][0]["fixture"] == "MIN2"
    assert d["discrepancies"][0]["observed"]["frobenius_counterexample"] == [0, 1, 0, 0]


def test_catalog_marks_refused_sweeps_incomplete():
    rep = catalog(CatalogConfig(size=3, mode="general"))
    assert not rep.complete and not rep.passed
    assert "incomplete" in rep.scope


def test_catalog_records_non_special_samples():
    rep = catalog(CatalogConfig(size=2, mode="general"))
    assert rep.non_special["count"] == 2
    assert rep.non_special["first"]["subject"]["unit"] == [1]
