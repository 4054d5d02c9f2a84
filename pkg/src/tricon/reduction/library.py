"""Small planar 3-connected instances with fixed embeddings."""

from __future__ import annotations

import math

from .cnf import CnfInstance
from .planar import RotationSystem, faces, incidence_rotation

# straight-line cube drawing: outer square 000,100,110,010 and inner square 001,101,111,011
_CUBE_XY = {
    "000": (-2, -2), "100": (2, -2), "110": (2, 2), "010": (-2, 2),
    "001": (-1, -1), "101": (1, -1), "111": (1, 1), "011": (-1, 1),
}


def _ccw_from_xy(xy, nbrs):
    return {v: sorted(ws, key=lambda w: math.atan2(xy[w][1] - xy[v][1], xy[w][0] - xy[v][0]))
            for v, ws in nbrs.items()}


def cube_rotation():
    nbrs = {v: [w for w in _CUBE_XY if sum(a != b for a, b in zip(v, w)) == 1] for v in _CUBE_XY}
    return RotationSystem.from_neighbors(_ccw_from_xy(_CUBE_XY, nbrs))


# clause vertices of Q3 have even weight, variable vertices odd weight
_PHI0_VARS = {"100": 1, "010": 2, "001": 3, "111": 4}
_PHI0_CLAUSES = [("000", (1, 2, 3)), ("110", (1, -2, 4)), ("101", (-1, 3, -4)), ("011", (2, -3, 4))]


def phi0():
    """Four clauses on four variables; I_Phi is the cube graph."""
    return CnfInstance(4, tuple(lits for _, lits in _PHI0_CLAUSES))


def phi0_rotation():
    cube = cube_rotation()
    name = {v: f"x{i}" for v, i in _PHI0_VARS.items()}
    name.update({v: f"C{i + 1}" for i, (v, _) in enumerate(_PHI0_CLAUSES)})
    order = {name[v]: [name[w] for w in cube.neighbors(v)] for v in cube.rotation}
    return incidence_rotation(phi0(), order)


def radial_rotation(rs):
    """Vertex-face incidence graph of an embedding, with its rotation system.

    Vertices keep their names; face k becomes 'f{k}'.  Around a vertex the
    faces appear in the order of the darts leaving it.
    """
    face_of = {}
    fs = faces(rs)
    for k, face in enumerate(fs):
        for d in face:
            face_of[d] = f"f{k}"
    order = {}
    for v in rs.rotation:
        order[v] = [face_of[(v, w)] for w in rs.neighbors(v)]
    for k, face in enumerate(fs):
        # a traced face lists its corners counterclockwise
        order[f"f{k}"] = [u for u, _ in face]
    return order


_PHI1_SIGNS = [(1, 1, -1), (1, -1, 1), (-1, 1, 1), (1, 1, 1), (-1, -1, 1), (1, -1, -1), (-1, 1, -1), (1, 1, 1)]


def phi1():
    """Eight clauses on six variables with four occurrences each (rhombic dodecahedron)."""
    return _phi1()[0]


def phi1_rotation():
    return _phi1()[1]


def _phi1():
    order = radial_rotation(cube_rotation())
    face_ids = sorted(v for v in order if v.startswith("f"))
    var = {f: i + 1 for i, f in enumerate(face_ids)}
    cube_vs = sorted(_CUBE_XY)
    clauses = []
    for k, v in enumerate(cube_vs):
        lits = [var[f] for f in order[v]]
        clauses.append(tuple(s * x for s, x in zip(_PHI1_SIGNS[k], lits)))
    phi = CnfInstance(len(face_ids), tuple(clauses))
    name = {v: f"C{k + 1}" for k, v in enumerate(cube_vs)}
    name.update({f: f"x{var[f]}" for f in face_ids})
    rot = {name[v]: [name[w] for w in ws] for v, ws in order.items()}
    return phi, incidence_rotation(phi, rot)
