"""Rotation systems, embedding validation and exact barycentric layouts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..geometry import segments_intersect
from .cnf import CnfInstance, CnfError


class EmbeddingError(ValueError):
    pass


class NotPlanarEmbedding(EmbeddingError):
    pass


class NotThreeConnected(EmbeddingError):
    def __init__(self, cut):
        self.cut = tuple(cut)
        super().__init__(f"removing {self.cut[0]} and {self.cut[1]} disconnects the graph")


class BoundViolation(EmbeddingError, CnfError):
    pass


class SingularSystem(EmbeddingError):
    pass


@dataclass(frozen=True)
class RotationSystem:
    """Counterclockwise cyclic order of edge ids around every vertex."""

    edges: dict      # edge id -> (a, b)
    rotation: dict   # vertex -> tuple of edge ids

    def __post_init__(self):
        object.__setattr__(self, "edges", {e: tuple(ab) for e, ab in self.edges.items()})
        object.__setattr__(self, "rotation", {v: tuple(es) for v, es in self.rotation.items()})
        for e, (a, b) in self.edges.items():
            if a == b:
                raise EmbeddingError(f"loop {e}")
            for x in (a, b):
                if e not in self.rotation.get(x, ()):
                    raise EmbeddingError(f"edge {e} missing from the rotation of {x}")
        for v, es in self.rotation.items():
            if len(set(es)) != len(es):
                raise EmbeddingError(f"repeated edge around {v}")
            for e in es:
                if e not in self.edges or v not in self.edges[e]:
                    raise EmbeddingError(f"{e} is not incident to {v}")

    @property
    def vertices(self):
        return sorted(self.rotation)

    def other(self, e, v):
        a, b = self.edges[e]
        return b if v == a else a

    def neighbors(self, v):
        """Neighbours of v in counterclockwise order."""
        return [self.other(e, v) for e in self.rotation[v]]

    def adjacency(self):
        return {v: set(self.neighbors(v)) for v in self.rotation}

    @classmethod
    def from_neighbors(cls, nbrs):
        """Build from {vertex: [neighbours counterclockwise]} of a simple graph."""
        edges, rotation = {}, {}
        for v, ws in nbrs.items():
            rotation[v] = []
            for w in ws:
                e = _edge_name(v, w)
                edges[e] = tuple(sorted((v, w), key=str))
                rotation[v].append(e)
        return cls(edges, rotation)

    def reversed(self):
        return RotationSystem(self.edges, {v: tuple(reversed(es)) for v, es in self.rotation.items()})

    def to_json(self):
        return {"edges": {e: list(ab) for e, ab in sorted(self.edges.items())},
                "rotation": {v: list(es) for v, es in sorted(self.rotation.items())}}

    @classmethod
    def from_json(cls, data):
        return cls({e: tuple(ab) for e, ab in data["edges"].items()}, data["rotation"])


def _edge_name(v, w):
    a, b = sorted((str(v), str(w)))
    return f"{a}~{b}"


def faces(rs):
    """Trace the faces of the embedding; each face is a list of darts (u, v)."""
    succ = {}
    for v, es in rs.rotation.items():
        nb = [rs.other(e, v) for e in es]
        for i, w in enumerate(nb):
            # after arriving at v from w, leave along the edge before w (clockwise turn)
            succ[(w, v)] = (v, nb[i - 1])
    seen, out = set(), []
    for dart in sorted(succ, key=str):
        if dart in seen:
            continue
        face, d = [], dart
        while d not in seen:
            seen.add(d)
            face.append(d)
            d = succ[d]
        out.append(face)
    return out


def euler_characteristic(rs):
    return len(rs.rotation) - len(rs.edges) + len(faces(rs))


def _connected_without(adj, removed):
    rest = [v for v in adj if v not in removed]
    if not rest:
        return True
    seen, stack = {rest[0]}, [rest[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(rest)


def find_two_cut(adj):
    """A separating pair of vertices, or None (exhaustive)."""
    if not _connected_without(adj, ()):
        return (None, None)
    for v in sorted(adj, key=str):
        if not _connected_without(adj, {v}):
            return (v, v)
    for a, b in combinations(sorted(adj, key=str), 2):
        if len(adj) > 3 and not _connected_without(adj, {a, b}):
            return (a, b)
    return None


def incidence_edges(phi):
    """Edges of I_Phi: 'C{i}.{p}' joins clause C{i} to variable x{|lit|} (1-based)."""
    return {f"C{i + 1}.{p + 1}": (f"C{i + 1}", f"x{abs(lit)}")
            for i, cl in enumerate(phi.clauses) for p, lit in enumerate(cl)}


def validate_instance(phi: CnfInstance, rs: RotationSystem):
    """Check bounds, genus 0 and 3-connectivity; returns the instance unchanged."""
    for i, cl in enumerate(phi.clauses):
        if len(cl) != 3 or len({abs(l) for l in cl}) != 3:
            raise BoundViolation(f"clause {i + 1} must have 3 literals on distinct variables")
    for v in phi.variables():
        if len(phi.occurrences(v)) > 4:
            raise BoundViolation(f"variable {v} occurs more than 4 times")
    expected = incidence_edges(phi)
    if dict(rs.edges) != expected:
        raise EmbeddingError("rotation system does not match the incidence graph")
    if euler_characteristic(rs) != 2:
        raise NotPlanarEmbedding(f"V - E + F = {euler_characteristic(rs)}, expected 2")
    cut = find_two_cut(rs.adjacency())
    if cut is not None:
        raise NotThreeConnected(cut)
    return phi


def incidence_rotation(phi, order):
    """Rotation system of I_Phi from {vertex: [neighbour vertex ids counterclockwise]}."""
    edges = incidence_edges(phi)
    by_pair = {frozenset(ab): e for e, ab in edges.items()}
    rotation = {}
    for v, ws in order.items():
        try:
            rotation[v] = [by_pair[frozenset((v, w))] for w in ws]
        except KeyError as exc:
            raise EmbeddingError(f"{v} is not adjacent to {exc.args[0]}") from None
    return RotationSystem(edges, rotation)


def _solve(matrix, rhs):
    """Exact Gauss-Jordan; rhs is a list of row vectors."""
    n = len(matrix)
    a = [row[:] + list(r) for row, r in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularSystem("barycentric system is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def rational_polygon(k, radius=1):
    """k rational points in convex position on a circle (counterclockwise)."""
    out = []
    for i in range(k):
        theta = 2 * math.pi * (i + Fraction(1, 2)) / k
        if abs(math.cos(theta / 2)) < 1e-9:
            out.append((-Fraction(radius), Fraction(0)))
            continue
        # rational parametrisation of the circle by t = tan(theta / 2)
        t = Fraction(math.tan(theta / 2)).limit_denominator(10 ** 6)
        d = 1 + t * t
        out.append((radius * (1 - t * t) / d, radius * 2 * t / d))
    return out


def outer_face_cycle(rs):
    """Vertices of the longest face, the default outer face."""
    best = max(faces(rs), key=len)
    return [u for u, _ in best]


def tutte_layout(rs, outer_face=None, outer_positions=None):
    """Exact barycentric embedding with the outer face on a convex polygon.

    Every inner vertex is the average of its neighbours.  Unless explicit
    outer positions are given, the result is mirrored if necessary so that
    counterclockwise neighbour order in the drawing agrees with the rotation
    system.
    """
    outer = list(outer_face) if outer_face is not None else outer_face_cycle(rs)
    free_outer = outer_positions is None
    if free_outer:
        outer_positions = rational_polygon(len(outer))
    if len(outer_positions) != len(outer):
        raise EmbeddingError("need one position per outer vertex")
    pos = {v: tuple(Fraction(c) for c in p) for v, p in zip(outer, outer_positions)}
    inner = [v for v in rs.vertices if v not in pos]
    index = {v: i for i, v in enumerate(inner)}
    adj = rs.adjacency()
    n = len(inner)
    matrix = [[Fraction(0)] * n for _ in range(n)]
    rhs = [[Fraction(0), Fraction(0)] for _ in range(n)]
    for v in inner:
        i = index[v]
        matrix[i][i] = Fraction(len(adj[v]))
        for w in adj[v]:
            if w in index:
                matrix[i][index[w]] -= 1
            else:
                rhs[i][0] += pos[w][0]
                rhs[i][1] += pos[w][1]
    if n:
        sol = _solve(matrix, rhs)
        for v in inner:
            pos[v] = (sol[index[v]][0], sol[index[v]][1])
    if free_outer and not drawing_matches_rotation(rs, pos):
        pos = {v: (-x, y) for v, (x, y) in pos.items()}
    return pos


def _angle(p, q):
    return math.atan2(float(q[1] - p[1]), float(q[0] - p[0]))


def drawing_rotation(rs, pos):
    """Counterclockwise neighbour order of every vertex in a straight-line drawing."""
    return {v: sorted(rs.neighbors(v), key=lambda w: _angle(pos[v], pos[w])) for v in rs.rotation}


def _same_cyclic(a, b):
    if len(a) != len(b):
        return False
    if not a:
        return True
    k = b.index(a[0]) if a[0] in b else -1
    return k >= 0 and all(a[i] == b[(k + i) % len(b)] for i in range(len(a)))


def drawing_matches_rotation(rs, pos):
    drawn = drawing_rotation(rs, pos)
    return all(_same_cyclic(rs.neighbors(v), drawn[v]) for v in rs.rotation)


def crossings(rs, pos):
    """Pairs of edges whose straight segments meet outside a shared endpoint (exact)."""
    out = []
    items = sorted(rs.edges.items())
    for (e, (a, b)), (f, (c, d)) in combinations(items, 2):
        shared = {a, b} & {c, d}
        if shared:
            # segments sharing an endpoint may only meet there
            s = shared.pop()
            x = b if a == s else a
            y = d if c == s else c
            if _collinear_overlap(pos[s], pos[x], pos[y]):
                out.append((e, f))
            continue
        if segments_intersect(pos[a], pos[b], pos[c], pos[d]):
            out.append((e, f))
    for v, p in pos.items():
        for e, (a, b) in items:
            if v not in (a, b) and _on_open_segment(pos[a], pos[b], p):
                out.append((v, e))
    return out


def _collinear_overlap(s, x, y):
    cross = (x[0] - s[0]) * (y[1] - s[1]) - (x[1] - s[1]) * (y[0] - s[0])
    dot = (x[0] - s[0]) * (y[0] - s[0]) + (x[1] - s[1]) * (y[1] - s[1])
    return cross == 0 and dot > 0


def _on_open_segment(a, b, p):
    cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    if cross != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
            and p != a and p != b)
