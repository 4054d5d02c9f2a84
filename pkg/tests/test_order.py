import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from tricon.catalog import chevron, cycle_graph, standard_example
from tricon.order import (
    BipartiteGraph,
    CycleDetected,
    ElementMismatch,
    EmptyPoset,
    HeightExceeded,
    Poset,
    Realizer,
    antichain,
    bipartite_to_order,
    chain,
    close_transitively,
    height,
    incomparable_pairs,
    is_realizer,
    order_to_bipartite,
)
from tricon.oracle import dimension_at_most_k

from conftest import random_poset


def test_closure_adds_transitive_pair():
    P = close_transitively({("a", "b"), ("b", "c")}, {"a", "b", "c"})
    assert P.less_than == {("a", "b"), ("b", "c"), ("a", "c")}


def test_closure_of_empty_relation_is_antichain():
    P = close_transitively(set(), {"a", "b"})
    assert P.elements == {"a", "b"} and not P.less_than


def test_closure_rejects_cycle():
    with pytest.raises(CycleDetected) as err:
        close_transitively({("a", "b"), ("b", "a")}, {"a", "b"})
    assert set(err.value.cycle) == {"a", "b"}


def test_height_examples():
    assert height(chain("xyz")) == 3
    assert height(antichain("abcd")) == 1
    assert height(standard_example(3)) == 2
    # the chevron carries two 3-chains (a<d<e, b<c<e)
    assert height(chevron()) == 3
    with pytest.raises(EmptyPoset):
        height(antichain([]))


def test_bipartite_round_trip_single_edge():
    G = BipartiteGraph({"u"}, {"w"}, {("u", "w")})
    P = bipartite_to_order(G)
    assert P == chain("uw")
    assert order_to_bipartite(P) == G


def test_three_chain_is_not_bipartite():
    with pytest.raises(HeightExceeded):
        order_to_bipartite(chain("abc"))


def test_six_cycle_gives_crown():
    # direct enumeration of C6's bipartition: 3 minima, 3 maxima, 6 comparabilities
    P = bipartite_to_order(cycle_graph(6))
    assert len(P.minimal()) == 3 and len(P.maximal()) == 3
    assert len(P.less_than) == 6 and P.covers() == set(P.less_than)
    assert height(P) == 2


def test_isolated_elements_are_white():
    P = close_transitively({("a", "b")}, {"a", "b", "z"})
    G = order_to_bipartite(P)
    assert "z" in G.white and G.black == {"b"}


def test_is_realizer_examples():
    assert is_realizer(chain("ab"), Realizer([("a", "b")]))
    assert not is_realizer(antichain("ab"), Realizer([("a", "b")]))
    assert is_realizer(antichain("ab"), Realizer([("a", "b"), ("b", "a")]))
    with pytest.raises(ElementMismatch):
        is_realizer(chain("ab"), Realizer([("a", "c")]))


def test_chevron_has_oracle_three_realizer():
    ans = dimension_at_most_k(chevron(), 3)
    assert ans and len(ans.witness) == 3
    assert is_realizer(chevron(), ans.witness)


def test_incomparable_pairs():
    assert incomparable_pairs(chain("ab")) == set()
    assert len(incomparable_pairs(antichain("abcde"))) == 10
    P = chevron()
    expected = {frozenset(p) for p in combinations("abcdef", 2)
                if not P.comparable(*p)}
    assert incomparable_pairs(P) == expected
    # a<d<e, b<c<e, a<f, b<f: enumerate by hand
    assert incomparable_pairs(P) == {frozenset(p) for p in
                                     ["ab", "ac", "bd", "cd", "cf", "df", "ef"]}


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(1, 7))
def test_realizer_intersection_reconstructs_order(seed, n):
    P = random_poset(random.Random(seed), n, 0.4)
    ans = dimension_at_most_k(P, 3)
    assert ans
    assert ans.witness.intersection() == P


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(1, 10))
def test_height_two_iff_no_three_chain(seed, n):
    P = random_poset(random.Random(seed), n, 0.3)
    has_chain = any(P.lt(x, y) and P.lt(y, z) for x, y, z in permutations(P.elements, 3))
    assert (height(P) <= 2) == (not has_chain)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_bipartite_round_trip(seed):
    rng = random.Random(seed)
    white = {f"w{i}" for i in range(rng.randint(1, 5))}
    black = {f"b{i}" for i in range(rng.randint(1, 5))}
    edges = {(w, b) for w in white for b in black if rng.random() < 0.5}
    # isolated black vertices would be recolored white by convention
    black = {b for b in black if any(e[1] == b for e in edges)}
    G = BipartiteGraph(white, black, edges)
    assert order_to_bipartite(bipartite_to_order(G)) == G


def test_poset_rejects_reflexive_pairs():
    with pytest.raises(ValueError):
        Poset(frozenset("a"), frozenset({("a", "a")}))
