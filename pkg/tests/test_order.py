import itertools

import numpy as np
import pytest
from hypothesis import given

from prelab.order import (
    ClosedSet,
    Side,
    SizeLimitError,
    chain,
    close_preorder,
    completion,
    direct_sum,
    discrete,
    enumerate_preorders,
    generated,
    is_monotone,
    opposite,
    Preorder,
    principal,
    product,
    quotient,
    split_index,
)
from strategies import preorders


def test_closure_of_chain_generators():
    P = close_preorder(3, [(0, 1), (1, 2)])
    assert len(P.pairs()) == 6
    assert P.derr(0, 2) and not P.derr(2, 0)


def test_no_generators_gives_discrete():
    assert close_preorder(2, []) == discrete(2)
    assert len(discrete(2).pairs()) == 2


def test_loop_generators_make_a_class():
    P = close_preorder(3, [(0, 1), (1, 0)])
    # three reflexive pairs and the two generators; nothing else is forced
    assert len(P.pairs()) == 5
    assert P.equiv(0, 1) and not P.equiv(0, 2)


def test_constructor_rejects_bad_relations():
    with pytest.raises(ValueError, match="reflexive"):
        Preorder(np.zeros((2, 2), dtype=bool))
    rel = np.eye(3, dtype=bool)
    rel[0, 1] = rel[1, 2] = True
    with pytest.raises(ValueError, match="transitive"):
        Preorder(rel)


def test_relation_is_read_only():
    P = chain(2)
    with pytest.raises(ValueError):
        P.rel[1, 0] = True


@pytest.mark.parametrize("gens, size, classes", [
    ([(0, 1), (1, 0)], 2, (0, 0)),
    ([], 2, (0, 1)),
])
def test_quotient_small(gens, size, classes):
    Q, cls = quotient(close_preorder(2, gens))
    assert Q.size == len(set(classes)) and cls == classes


def test_quotient_equivalent_pair_below_third():
    Q, cls = quotient(close_preorder(3, [(0, 1), (1, 0), (0, 2)]))
    assert Q == chain(2)
    assert cls == (0, 0, 1)


def test_opposite():
    assert opposite(discrete(3)) == discrete(3)
    assert opposite(chain(2)).derr(1, 0)


@given(preorders())
def test_opposite_is_transpose(P):
    assert (opposite(P).rel == P.rel.T).all()
    assert opposite(opposite(P)) == P


def test_lower_sets_of_chain_and_discrete():
    assert [L.sorted() for L in completion(chain(2), Side.LOWER)] == [[], [1], [0, 1]]
    assert len(completion(discrete(2), Side.LOWER)) == 4


@given(preorders())
def test_completion_matches_subset_filter(P):
    for side in Side:
        found = {L.members for L in completion(P, side)}
        brute = set()
        for k in range(P.size + 1):
            for sub in itertools.combinations(range(P.size), k):
                try:
                    brute.add(ClosedSet(P, side, frozenset(sub)).members)
                except ValueError:
                    pass
        assert found == brute


def test_closed_set_validation():
    with pytest.raises(ValueError, match="lower set"):
        ClosedSet(chain(2), Side.LOWER, {0})
    assert principal(chain(2), 0, Side.LOWER).sorted() == [0, 1]
    assert principal(chain(2), 1, Side.UPPER).sorted() == [0, 1]
    assert generated(chain(3), [1], Side.LOWER).sorted() == [1, 2]


@pytest.mark.parametrize("n, count", [(1, 1), (2, 4), (3, 29), (4, 355)])
def test_preorder_counts(n, count):
    found = list(enumerate_preorders(n))
    assert len(found) == count
    assert len(set(found)) == count


def test_enumeration_guard(monkeypatch):
    with pytest.raises(SizeLimitError):
        list(enumerate_preorders(5))
    monkeypatch.setenv("PRELAB_SIZE_LIMIT", "5")
    assert next(iter(enumerate_preorders(5))).size == 5


def test_products_and_sums():
    P = product(chain(2), discrete(2))
    assert P.size == 4
    assert P.derr(0, 2) and not P.derr(0, 1)
    assert split_index(discrete(2), 3) == (1, 1)
    S = direct_sum(chain(2), discrete(1))
    assert S.size == 3 and S.derr(0, 1) and not S.derr(1, 2)


def test_product_is_associative():
    A, B, C = chain(2), discrete(2), chain(2)
    assert product(product(A, B), C) == product(A, product(B, C))


def test_monotone():
    assert is_monotone(chain(2), chain(2), [0, 1])
    assert not is_monotone(chain(2), chain(2), [1, 0])
