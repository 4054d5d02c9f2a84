import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tricon.catalog import chevron, crown_graph, standard_example
from tricon.geometry import (
    BetaGraph,
    Embedding,
    EmbeddingOrderMismatch,
    LevelAboveApex,
    MixedOrientationInContainmentMode,
    Mode,
    NotADownset,
    Orientation,
    RepresentationMismatch,
    Triangle,
    TriangleFamily,
    beta_graph,
    check_disjoint_paths,
    cone_triangle,
    embedding_to_mixed_family,
    embedding_to_realizer,
    family_from_embedding,
    family_order,
    normalize_triangles,
    order_of,
    realizer_to_embedding,
)
from tricon.order import BipartiteGraph, Realizer, antichain, bipartite_to_order, chain, is_realizer, order_to_bipartite
from tricon.oracle import dimension_at_most_k

from conftest import convex_polygons_meet, random_height2, random_poset, triangle_corners_2d


def test_realizer_to_embedding_examples():
    assert realizer_to_embedding(chain("ab"), Realizer([("a", "b")])).coords == {"a": (1,), "b": (2,)}
    E = realizer_to_embedding(antichain("ab"), Realizer([("a", "b"), ("b", "a")]))
    assert E.coords == {"a": (1, 2), "b": (2, 1)}


def test_chevron_embedding_round_trip():
    P = chevron()
    R = dimension_at_most_k(P, 3).witness
    E = realizer_to_embedding(P, R)
    assert E.dim == 3 and order_of(E) == P


def test_embedding_to_realizer_examples():
    E = Embedding(1, {"a": (1,), "b": (2,)})
    assert embedding_to_realizer(E, chain("ab")) == Realizer([("a", "b")])
    E = Embedding(2, {"a": (1, 2), "b": (2, 1)})
    assert embedding_to_realizer(E, antichain("ab")) == Realizer([("a", "b"), ("b", "a")])
    E = Embedding(2, {"a": (1, 1), "b": (1, 2)})
    assert embedding_to_realizer(E, chain("ab")) == Realizer([("a", "b"), ("a", "b")])
    with pytest.raises(EmbeddingOrderMismatch):
        embedding_to_realizer(E, antichain("ab"))


def test_cone_triangle_corners():
    assert set(cone_triangle((0, 0, 0), -3).corners()) == {(-3, 0, 0), (0, -3, 0), (0, 0, -3)}
    assert set(cone_triangle((1, 1, 1), 0).corners()) == {(-2, 1, 1), (1, -2, 1), (1, 1, -2)}
    t = cone_triangle((1, 2, 0), 3)
    assert t.is_point and set(t.corners()) == {(1, 2, 0)}
    with pytest.raises(LevelAboveApex):
        cone_triangle((0, 0, 0), 1)


def test_family_order_examples():
    fam = TriangleFamily(0, {"x": Triangle((0, 0, 0), 0), "y": Triangle((1, 1, 1), 0)})
    assert family_order(fam) == chain("xy")
    fam = TriangleFamily(0, {"x": Triangle((0, 2, 0), 0), "y": Triangle((1, 1, 1), 0)})
    assert family_order(fam) == antichain("xy")
    mixed = TriangleFamily(3, {"y": Triangle((0, 0, 0), 3, Orientation.UP),
                               "x": Triangle((1, 1, 1), 3, Orientation.DOWN)})
    assert family_order(mixed, Mode.MIXED) == chain("yx")
    # polygon oracle: the UP and DOWN triangles do meet
    up = triangle_corners_2d((0, 0, 0), 3)
    down = triangle_corners_2d((1, 1, 1), 3)
    assert convex_polygons_meet(up, down)
    with pytest.raises(MixedOrientationInContainmentMode):
        family_order(mixed, Mode.CONTAINMENT)


def _random_apex(rng):
    return tuple(F(rng.randint(-12, 12), rng.randint(1, 4)) for _ in range(3))


def test_mixed_comparability_matches_polygon_intersection(rng):
    checked = 0
    while checked < 120:
        a, b = _random_apex(rng), _random_apex(rng)
        lo, hi = sorted((sum(a), sum(b)))
        if lo == hi:
            continue
        c = (lo + hi) / 2
        up_apex, down_apex = (a, b) if sum(a) < sum(b) else (b, a)
        fam = TriangleFamily(c, {"y": Triangle(up_apex, c, "up"), "x": Triangle(down_apex, c, "down")})
        comparable = family_order(fam, Mode.MIXED).lt("y", "x")
        meets = convex_polygons_meet(triangle_corners_2d(up_apex, c), triangle_corners_2d(down_apex, c))
        assert comparable == meets
        checked += 1


def test_containment_monotonicity_by_corners(rng):
    for _ in range(200):
        a, b = _random_apex(rng), _random_apex(rng)
        c = min(sum(a), sum(b)) - 1
        ta, tb = cone_triangle(a, c), cone_triangle(b, c)
        inside = all(tb.contains_point(p) for p in ta.corners())
        assert inside == all(x <= y for x, y in zip(a, b))


CHEVRON_POINTS = {"a": (0, 2, 0), "b": (1, 0, 0), "c": (3, 0, 1),
                  "d": (0, 3, 1), "e": (3, 3, 1), "f": (2, 2, 2)}


def test_chevron_mixed_family_degenerates_at_x0():
    P = chevron()
    E = Embedding(3, CHEVRON_POINTS)
    assert order_of(E) == P
    lower = P.minimal()
    level = sum(E.coords["a"])  # the plane passes through x0 = a
    fam = embedding_to_mixed_family(E, (lower, set(P.elements) - lower), level)
    assert [x for x, t in fam.triangles.items() if t.is_point] == ["a"]
    assert {fam.triangles[y].orientation for y in lower} == {Orientation.UP}
    assert family_order(fam, Mode.MIXED) == P


def test_all_upper_split_is_pure_containment():
    P = standard_example(3)
    E = realizer_to_embedding(P, dimension_at_most_k(P, 3).witness)
    fam = embedding_to_mixed_family(E, (set(), set(P.elements)), 0)
    assert fam == family_from_embedding(E, 0)


def test_two_chain_split_across_plane():
    E = Embedding(3, {"y": (0, 0, 0), "x": (1, 1, 1)})
    fam = embedding_to_mixed_family(E, ({"y"}, {"x"}), F(3, 2))
    assert family_order(fam, Mode.MIXED) == chain("yx")
    assert convex_polygons_meet(triangle_corners_2d((0, 0, 0), F(3, 2)), triangle_corners_2d((1, 1, 1), F(3, 2)))
    with pytest.raises(NotADownset):
        embedding_to_mixed_family(E, ({"x"}, {"y"}), F(3, 2))


def test_beta_graph_single_edge():
    fam = TriangleFamily(0, {"u": Triangle((0, 0, 0), 0), "w": Triangle((1, 1, 1), 0)})
    G = BipartiteGraph({"u"}, {"w"}, {("u", "w")})
    B = beta_graph(fam, G)
    assert len(B.vertices) == 2 and len(B.edges) == 1


def test_beta_graph_of_crown_family():
    G = crown_graph(3)
    P = bipartite_to_order(G)
    fam = family_from_embedding(realizer_to_embedding(P, dimension_at_most_k(P, 3).witness), 0)
    B = beta_graph(fam, G)
    assert len(B.vertices) == 6 and len(set(B.vertices.values())) == 6
    assert check_disjoint_paths(B, G) == []


def test_beta_graph_mismatch():
    fam = TriangleFamily(0, {"u": Triangle((0, 5, 0), 0), "w": Triangle((5, 0, 0), 0)})
    G = BipartiteGraph({"u"}, {"w"}, {("u", "w")})
    with pytest.raises(RepresentationMismatch):
        beta_graph(fam, G)


def test_planted_crossing_is_reported():
    G = BipartiteGraph({"a", "c"}, {"b", "d"}, {("a", "b"), ("c", "d")})
    B = BetaGraph({"a": (0, 0), "b": (2, 2), "c": (0, 2), "d": (2, 0)}, G.edges)
    assert check_disjoint_paths(B, G) == [(("a", "b"), ("c", "d"))]


def test_star_has_no_strongly_independent_pairs():
    G = BipartiteGraph({"c"}, {"x", "y", "z"}, {("c", "x"), ("c", "y"), ("c", "z")})
    B = BetaGraph({"c": (0, 0), "x": (1, 0), "y": (-1, 1), "z": (-1, -1)}, G.edges)
    assert check_disjoint_paths(B, G) == []


def test_coincident_barycenters_are_separated():
    # point triangles of a mixed family may share a barycenter with a DOWN triangle
    fam = TriangleFamily(0, {"p": Triangle((0, 0, 0), 0, "up"), "q": Triangle((1, 1, 1), 0, "down"),
                             "r": Triangle((-2, 1, 0), 0, "up")})
    G = order_to_bipartite(family_order(fam, Mode.MIXED))
    B = beta_graph(fam, G)
    assert len(set(B.vertices.values())) == 3


def test_normalize_raw_triangles():
    raw = {
        "big": [(0, 0), (4, 0), (0, 4)],
        "small": [(1, 1), (2, 1), (1, 2)],
        "out": [(5, 5), (6, 5), (5, 6)],
        "flip": [(F(3, 2), F(3, 2)), (F(1, 2), F(3, 2)), (F(3, 2), F(1, 2))],
    }
    fam = normalize_triangles(raw)
    assert fam.triangles["flip"].orientation is Orientation.UP
    down = TriangleFamily(0, {k: v for k, v in fam.triangles.items() if k != "flip"})
    assert family_order(down) == chain(["small", "big"]).__class__(
        frozenset({"small", "big", "out"}), frozenset({("small", "big")}))
    # the reflected triangle overlaps "small" and "big" but not "out"
    P = family_order(fam, Mode.MIXED)
    assert P.lt("flip", "big") and P.lt("flip", "small") and not P.comparable("flip", "out")


def _embedded_height2(seed):
    rng = random.Random(seed)
    while True:
        P = random_height2(rng, rng.randint(2, 8), 0.5)
        ans = dimension_at_most_k(P, 3)
        if ans:
            return P, ans.witness


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_cone_family_round_trip_and_lemma1(seed):
    P, R = _embedded_height2(seed)
    E = realizer_to_embedding(P, R)
    fam = family_from_embedding(E, 0)
    assert family_order(fam) == P
    G = order_to_bipartite(P)
    assert check_disjoint_paths(beta_graph(fam, G), G) == []
    assert is_realizer(P, embedding_to_realizer(E, P))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_general_posets_round_trip(seed):
    rng = random.Random(seed)
    P = random_poset(rng, rng.randint(1, 8), 0.35)
    ans = dimension_at_most_k(P, 3)
    if not ans:
        return
    E = realizer_to_embedding(P, ans.witness)
    assert family_order(family_from_embedding(E, 0)) == P
