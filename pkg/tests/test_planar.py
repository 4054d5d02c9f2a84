from fractions import Fraction as F

import networkx as nx
import pytest

from tricon.reduction.cnf import CnfInstance
from tricon.reduction.library import cube_rotation, phi0, phi0_rotation, phi1, phi1_rotation, radial_rotation
from tricon.reduction.planar import (
    BoundViolation,
    EmbeddingError,
    NotPlanarEmbedding,
    NotThreeConnected,
    RotationSystem,
    crossings,
    drawing_matches_rotation,
    euler_characteristic,
    faces,
    find_two_cut,
    incidence_edges,
    rational_polygon,
    tutte_layout,
    validate_instance,
)


def _wheel(k):
    rim = [f"r{i}" for i in range(k)]
    nbrs = {"hub": rim[:]}
    for i, r in enumerate(rim):
        # counterclockwise around a rim vertex of a convex wheel: next, hub, previous
        nbrs[r] = [rim[(i + 1) % k], "hub", rim[i - 1]]
    return RotationSystem.from_neighbors(nbrs)


def _k4():
    return RotationSystem.from_neighbors({
        "a": ["b", "d", "c"], "b": ["c", "d", "a"], "c": ["a", "d", "b"], "d": ["a", "b", "c"],
    })


def _octahedron():
    xy = {"a": (0, 6), "b": (-6, -4), "c": (6, -4), "d": (0, -1), "e": (1, 1), "f": (-1, 1)}
    adj = {"a": "bcef", "b": "acdf", "c": "abde", "d": "bcef", "e": "acdf", "f": "abde"}
    import math
    nbrs = {v: sorted(ws, key=lambda w: math.atan2(xy[w][1] - xy[v][1], xy[w][0] - xy[v][0]))
            for v, ws in adj.items()}
    return RotationSystem.from_neighbors(nbrs)


def _nx(rs):
    return nx.Graph([tuple(ab) for ab in rs.edges.values()])


def test_k4_inner_vertex_is_average():
    rs = _k4()
    pos = tutte_layout(rs, ["a", "b", "c"], [(0, 0), (4, 0), (2, 4)])
    assert pos["d"] == (F(2), F(4, 3))
    assert crossings(rs, pos) == []


def test_wheel_hub_at_centroid():
    rs = _wheel(5)
    rim = [f"r{i}" for i in range(5)]
    pos = tutte_layout(rs, rim)
    cx = sum(pos[r][0] for r in rim) / 5
    cy = sum(pos[r][1] for r in rim) / 5
    assert pos["hub"] == (cx, cy)
    assert crossings(rs, pos) == []


@pytest.mark.parametrize("make", [_k4, lambda: _wheel(5), _octahedron, cube_rotation, phi0_rotation, phi1_rotation])
def test_layouts_are_crossing_free_and_respect_rotation(make):
    rs = make()
    assert euler_characteristic(rs) == 2
    pos = tutte_layout(rs)
    assert crossings(rs, pos) == []
    assert drawing_matches_rotation(rs, pos)


def test_crossing_detector_sees_a_crossing():
    rs = _k4()
    pos = {"a": (F(0), F(0)), "b": (F(4), F(0)), "c": (F(4), F(4)), "d": (F(0), F(4))}
    # in this square a-c and b-d are diagonals that cross
    assert crossings(rs, pos)


def test_face_tracing_counts():
    assert len(faces(_octahedron())) == 8
    assert len(faces(cube_rotation())) == 6


def test_swapped_rotation_is_not_planar():
    rs = _octahedron()
    rot = dict(rs.rotation)
    es = list(rot["a"])
    es[0], es[1] = es[1], es[0]
    rot["a"] = tuple(es)
    bad = RotationSystem(rs.edges, rot)
    assert euler_characteristic(bad) != 2


def test_two_cut_detected_and_agrees_with_networkx():
    # two K4 blocks glued along the pair {s, t}
    g = nx.Graph()
    g.add_edges_from([("s", "t"), ("s", "a"), ("t", "a"), ("s", "b"), ("t", "b"), ("a", "b"),
                      ("s", "c"), ("t", "c"), ("s", "d"), ("t", "d"), ("c", "d")])
    adj = {v: set(g[v]) for v in g}
    cut = find_two_cut(adj)
    assert set(cut) == {"s", "t"}
    assert nx.node_connectivity(g) == 2
    for make in (_octahedron, cube_rotation, phi0_rotation, phi1_rotation):
        rs = make()
        assert find_two_cut(rs.adjacency()) is None
        assert nx.node_connectivity(_nx(rs)) >= 3
        assert nx.check_planarity(_nx(rs))[0]


def test_library_instances_validate():
    for phi, rs in ((phi0(), phi0_rotation()), (phi1(), phi1_rotation())):
        assert validate_instance(phi, rs) is phi
        assert all(len(phi.occurrences(v)) in (3, 4) for v in phi.variables())


def test_library_instances_are_satisfiable_but_not_trivially():
    from itertools import product
    for phi in (phi0(), phi1()):
        sat = [bits for bits in product([False, True], repeat=phi.num_vars)
               if phi.satisfied_by({i + 1: b for i, b in enumerate(bits)})]
        assert 0 < len(sat) < 2 ** phi.num_vars


def test_validate_rejects_bad_inputs():
    phi, rs = phi0(), phi0_rotation()
    with pytest.raises(BoundViolation):
        validate_instance(CnfInstance(4, ((1, 1, 2),) + phi.clauses[1:]), rs)
    rot = dict(rs.rotation)
    es = list(rot["x1"])
    es[0], es[1] = es[1], es[0]
    rot["x1"] = tuple(es)
    with pytest.raises(NotPlanarEmbedding):
        validate_instance(phi, RotationSystem(rs.edges, rot))
    with pytest.raises(EmbeddingError):
        validate_instance(phi, _k4())


def test_not_three_connected_instance():
    # x1 and x2 meet every clause; removing them splits {C1, C2, x3} from {C3, C4, x4}
    phi = CnfInstance(4, ((1, 2, 3), (1, 2, -3), (1, 2, 4), (1, 2, -4)))
    g = nx.Graph(list(incidence_edges(phi).values()))
    ok, emb = nx.check_planarity(g)
    assert ok
    order = {v: list(reversed(list(emb.neighbors_cw_order(v)))) for v in g}
    from tricon.reduction.planar import incidence_rotation
    rs = incidence_rotation(phi, order)
    assert euler_characteristic(rs) == 2
    with pytest.raises(NotThreeConnected) as info:
        validate_instance(phi, rs)
    assert len(info.value.cut) == 2
    assert nx.node_connectivity(g) < 3


def test_rotation_json_round_trip():
    rs = phi1_rotation()
    assert RotationSystem.from_json(rs.to_json()) == rs


def test_incidence_edges_naming():
    edges = incidence_edges(phi0())
    assert edges["C2.2"] == ("C2", "x2")
    assert len(edges) == 12


def test_rational_polygon_convex_and_exact():
    pts = rational_polygon(7, 3)
    assert all(isinstance(c, F) for p in pts for c in p)
    assert all(x * x + y * y == 9 for x, y in pts)


def test_radial_graph_of_cube_is_rhombic_dodecahedron():
    order = radial_rotation(cube_rotation())
    assert sum(len(v) for v in order.values()) == 2 * 24
    assert sorted(len(v) for k, v in order.items() if k.startswith("f")) == [4] * 6
