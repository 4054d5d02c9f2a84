import json

import networkx as nx
import pytest

from tricon.reduction.cnf import CnfInstance
from tricon.reduction.gadgets import (
    CompileError,
    LengthConfig,
    UnsupportedOccurrenceCount,
    branch_girth,
    compile_gphi,
    compile_hphi,
    core_graph,
    pairing,
)
from tricon.reduction.library import phi0, phi0_rotation
from tricon.reduction.planar import incidence_rotation

# Derived by propagating strand orientations through yellow_choice; frozen here.
PAIRING_EVEN = {
    1: {1: "M", 2: "P", 3: "P"},
    2: {1: "P", 2: "M", 3: "M"},
    3: {1: "P", 2: "M", 3: "M"},
}


def test_pairing_table_frozen():
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            assert pairing(a, b, "even") == PAIRING_EVEN[a][b]
            assert pairing(a, b, "odd") == ("M" if PAIRING_EVEN[a][b] == "P" else "P")


def test_pairing_examples():
    assert pairing(1, 2, "even") == "P"
    assert pairing(1, 2, "odd") == "M"
    assert pairing(2, 3, "even") == "M"
    with pytest.raises(ValueError):
        pairing(0, 1, "even")


@pytest.fixture(scope="module")
def phi0_graphs():
    phi, rs = phi0(), phi0_rotation()
    return {g: compile_gphi(phi, rs, g) for g in (6, 10, 14)}


@pytest.mark.parametrize("g", [6, 10, 14])
def test_gphi_structure(phi0_graphs, g):
    G = phi0_graphs[g]
    deg = G.degree_map()
    assert max(deg.values()) == 5
    assert all(G.roles[v].kind.startswith("rotor-center") for v, d in deg.items() if d == 5)
    assert all(G.roles[v].kind == "gate" for v, d in deg.items() if d == 4)
    assert len(G.vertices_of("gate")) == 3 * len(phi0().clauses)
    assert branch_girth(G) >= g
    H = nx.Graph(list(G.graph.edges))
    assert nx.is_bipartite(H)
    assert nx.is_connected(H)


def test_branch_girth_matches_networkx():
    small = LengthConfig(cycle=40, rotor_path=6, segment=4, strand_factor=8)
    for g in (4, 8):
        G = compile_gphi(phi0(), phi0_rotation(), g, small)
        assert branch_girth(G) == nx.girth(nx.Graph(list(G.graph.edges))) >= g


def test_subdivision_invariance(phi0_graphs):
    cores = {g: core_graph(G) for g, G in phi0_graphs.items()}
    assert cores[6] == cores[10] == cores[14]
    sizes = [len(phi0_graphs[g].graph.vertices) for g in (6, 10, 14)]
    assert sizes[0] <= sizes[1] <= sizes[2]


def test_hphi_degree_and_girth():
    G = compile_hphi(phi0(), phi0_rotation(), 8)
    deg = G.degree_map()
    assert max(deg.values()) == 7
    assert branch_girth(G) >= 8
    assert G.variant == "HPHI"
    assert all(len(G.meta["variables"][x]["waste"]) == 6 - len(G.meta["variables"][x]["slots"])
               for x in G.meta["variables"])


def test_default_lengths():
    G = compile_gphi(phi0(), phi0_rotation())
    cyc = G.chains["C1.cycle"]
    assert len(cyc) - 1 == 314
    assert len(G.chains["C1.s1.y"]) - 1 in (50, 51)
    assert len(G.chains["C1.mU"]) - 1 in (50, 51)


def test_strands_follow_layout_length():
    G = compile_gphi(phi0(), phi0_rotation())
    for edge in G.meta["strands"]:
        assert len(G.chains[f"S.{edge}.y"]) >= 40


def test_roles_serialise():
    G = compile_gphi(phi0(), phi0_rotation())
    blob = json.dumps({v: r.to_json() for v, r in G.roles.items()})
    assert json.loads(blob)["C1.u"]["kind"] == "rotor-center-u"


def test_bad_configurations():
    with pytest.raises(CompileError):
        LengthConfig(cycle=315)
    with pytest.raises(CompileError):
        compile_gphi(phi0(), phi0_rotation(), girth=3)


def test_unsupported_occurrence_count():
    # variable 4 occurs once: I_phi is not 3-connected, the compiler still refuses it
    phi = CnfInstance(4, ((1, 2, 3), (-1, -2, -3), (1, 2, 4)))
    g = nx.Graph([(f"C{i + 1}", f"x{abs(l)}") for i, c in enumerate(phi.clauses) for l in c])
    ok, emb = nx.check_planarity(g)
    order = {v: list(reversed(list(emb.neighbors_cw_order(v)))) for v in g}
    rs = incidence_rotation(phi, order)
    with pytest.raises(UnsupportedOccurrenceCount) as info:
        compile_gphi(phi, rs)
    assert info.value.variable == 4
