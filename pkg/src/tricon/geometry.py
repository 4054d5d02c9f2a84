"""Embeddings into product orders and homothetic triangle families.

Triangles live in the plane ``p1 + p2 + p3 = level`` of R^3.  A DOWN triangle
with apex ``a`` is ``{p : p <= a}`` intersected with that plane, an UP
triangle is ``{p : p >= a}`` intersected with the plane.  Containment and
intersection then reduce to componentwise comparisons of apexes, so every
decision below is exact over ``Fraction``.
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from .order import (
    BipartiteGraph,
    LinearExtension,
    OrderError,
    Poset,
    Realizer,
    bipartite_to_order,
    is_realizer,
)


class GeometryError(ValueError):
    pass


class NotARealizer(GeometryError):
    pass


class EmbeddingOrderMismatch(GeometryError):
    pass


class LevelAboveApex(GeometryError):
    pass


class MixedOrientationInContainmentMode(GeometryError):
    pass


class NotADownset(GeometryError):
    pass


class NotAnUpset(GeometryError):
    pass


class SideOfPlaneViolated(GeometryError):
    pass


class RepresentationMismatch(GeometryError):
    pass


def frac(v):
    """Exact rational from int, Fraction, 'p/q' string or float (via its repr)."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        return Fraction(repr(v))
    return Fraction(v)


def leq(p, q):
    return all(a <= b for a, b in zip(p, q))


class Orientation(str, enum.Enum):
    DOWN = "down"
    UP = "up"


class Mode(str, enum.Enum):
    CONTAINMENT = "containment"
    MIXED = "mixed"


@dataclass(frozen=True)
class Embedding:
    dim: int
    coords: dict

    def __post_init__(self):
        coords = {x: tuple(frac(c) for c in p) for x, p in self.coords.items()}
        for x, p in coords.items():
            if len(p) != self.dim:
                raise GeometryError(f"point of {x} has {len(p)} coordinates, expected {self.dim}")
        object.__setattr__(self, "coords", coords)

    def __eq__(self, other):
        return isinstance(other, Embedding) and self.dim == other.dim and self.coords == other.coords

    def __hash__(self):
        return hash((self.dim, frozenset(self.coords.items())))


def order_of(E):
    seen = {}
    for x, p in E.coords.items():
        if p in seen:
            raise EmbeddingOrderMismatch(f"{seen[p]} and {x} share the point {p}")
        seen[p] = x
    rel = frozenset((x, y) for x, y in permutations(E.coords, 2) if leq(E.coords[x], E.coords[y]))
    return Poset(frozenset(E.coords), rel)


def realizer_to_embedding(P, R):
    try:
        ok = is_realizer(P, R)
    except OrderError as exc:
        raise NotARealizer(str(exc)) from exc
    if not ok:
        raise NotARealizer("extensions do not realize the poset")
    positions = [ext.position() for ext in R.extensions]
    return Embedding(len(R), {x: tuple(pos[x] + 1 for pos in positions) for x in P.elements})


def embedding_to_realizer(E, P):
    if order_of(E) != P:
        raise EmbeddingOrderMismatch("embedding does not induce the given order")
    extensions = []
    for i in range(E.dim):
        groups = defaultdict(list)
        for x, p in E.coords.items():
            groups[p[i]].append(x)
        order = []
        for value in sorted(groups):
            order.extend(_extend_group(P, groups[value]))
        extensions.append(LinearExtension(tuple(order)))
    return Realizer(tuple(extensions))


def _extend_group(P, group):
    # linear extension of P restricted to a tie group, ascending id among available
    remaining = sorted(group)
    out = []
    while remaining:
        for x in remaining:
            if not any(P.lt(y, x) for y in remaining if y != x):
                out.append(x)
                remaining.remove(x)
                break
    return out


@dataclass(frozen=True)
class Triangle:
    apex: tuple
    level: Fraction
    orientation: Orientation = Orientation.DOWN

    def __post_init__(self):
        apex = tuple(frac(c) for c in self.apex)
        if len(apex) != 3:
            raise GeometryError("triangles need a 3-coordinate apex")
        object.__setattr__(self, "apex", apex)
        object.__setattr__(self, "level", frac(self.level))
        object.__setattr__(self, "orientation", Orientation(self.orientation))
        gap = self.size
        if gap < 0:
            raise LevelAboveApex(f"apex {apex} lies on the wrong side of level {self.level}")

    @property
    def size(self):
        """Side-length parameter; zero for a point."""
        s = sum(self.apex) - self.level
        return s if self.orientation is Orientation.DOWN else -s

    @property
    def is_point(self):
        return self.size == 0

    def corners(self):
        a, c = self.apex, self.level
        out = []
        for k in range(3):
            v = list(a)
            v[k] = c - sum(a[i] for i in range(3) if i != k)
            out.append(tuple(v))
        return out

    def barycenter(self):
        shift = (self.level - sum(self.apex)) / 3
        return tuple(x + shift for x in self.apex)

    def contains_point(self, p):
        if self.orientation is Orientation.DOWN:
            return leq(p, self.apex)
        return leq(self.apex, p)


def cone_triangle(point, c, orientation=Orientation.DOWN):
    return Triangle(tuple(point), c, orientation)


@dataclass(frozen=True)
class TriangleFamily:
    level: Fraction
    triangles: dict

    def __post_init__(self):
        object.__setattr__(self, "level", frac(self.level))
        for x, t in self.triangles.items():
            if t.level != self.level:
                raise GeometryError(f"triangle {x} is not on the family level")

    def __eq__(self, other):
        return (isinstance(other, TriangleFamily) and self.level == other.level
                and self.triangles == other.triangles)

    def __hash__(self):
        return hash((self.level, frozenset(self.triangles.items())))

    def __len__(self):
        return len(self.triangles)

    @property
    def orientations(self):
        return {t.orientation for t in self.triangles.values()}


def family_from_embedding(E, c):
    """Pure containment family: one DOWN cone triangle per element."""
    if E.dim != 3:
        raise GeometryError("triangle families need a 3-dimensional embedding")
    c = frac(c)
    return TriangleFamily(c, {x: cone_triangle(p, c) for x, p in E.coords.items()})


def family_order(F, mode=Mode.CONTAINMENT):
    """The order represented by a family.

    CONTAINMENT: x < y iff triangle(x) is strictly inside triangle(y).
    MIXED: DOWN triangles ordered by containment, UP triangles by reverse
    containment, and an UP y lies below a DOWN x iff the two intersect.  In
    the sum-plane model all three cases are ``apex(x) <= apex(y)``.
    """
    mode = Mode(mode)
    if mode is Mode.CONTAINMENT and Orientation.UP in F.orientations:
        raise MixedOrientationInContainmentMode("UP triangle in a containment family")
    return _apex_order(F)


def _apex_order(F):
    items = sorted(F.triangles.items())
    seen = {}
    for x, t in items:
        if t.apex in seen:
            raise GeometryError(f"{seen[t.apex]} and {x} have the same apex")
        seen[t.apex] = x
    if len(items) < 400:
        rel = frozenset((x, y) for (x, s), (y, t) in permutations(items, 2)
                        if leq(s.apex, t.apex))
        return Poset(frozenset(F.triangles), rel)
    pairs = _dominance_pairs_numpy(items)
    if pairs is None:
        pairs = _dominance_pairs(items)
    return Poset(frozenset(F.triangles), frozenset(pairs))


def _dominance_pairs_numpy(items, chunk=256):
    """Exact apex dominance on a common integer grid; None if it would overflow."""
    try:
        import numpy as np
    except ImportError:
        return None
    den = 1
    for _, t in items:
        for c in t.apex:
            den = math.lcm(den, c.denominator)
    ints = [[int(c * den) for c in t.apex] for _, t in items]
    if max(abs(v) for row in ints for v in row) >= 2 ** 62:
        return None
    A = np.array(ints, dtype=np.int64)
    names = [x for x, _ in items]
    out = []
    for start in range(0, len(A), chunk):
        block = A[start:start + chunk]
        hit = np.all(block[:, None, :] <= A[None, :, :], axis=2)
        for i, j in zip(*np.nonzero(hit)):
            if i + start != j:
                out.append((names[i + start], names[j]))
    return out


def _dominance_pairs(items):
    # bucketed scan: only pairs whose projected barycenters are close can be
    # comparable when every triangle is small relative to the bucket
    pts = {x: plane_xy(t.barycenter()) for x, t in items}
    reach = max(abs(t.size) for _, t in items) * 4 + 1
    cell = max(reach, Fraction(1))
    grid = defaultdict(list)
    for x, (u, v) in pts.items():
        grid[(math.floor(u / cell), math.floor(v / cell))].append(x)
    tri = dict(items)
    out = []
    for x, (u, v) in pts.items():
        gx, gy = math.floor(u / cell), math.floor(v / cell)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for y in grid.get((gx + dx, gy + dy), ()):
                    if y != x and leq(tri[x].apex, tri[y].apex):
                        out.append((x, y))
    return out


def plane_xy(p):
    """Exact affine chart of the sum-plane: (p1 + p2/2, p2).

    Crossings and incidences are affine invariants, so this rational chart is
    used for every decision; ``display_xy`` scales y by sqrt(3)/2 for output.
    """
    return (p[0] + p[1] / 2, p[1])


def display_xy(p):
    x, y = plane_xy(p)
    return (float(x), float(y) * math.sqrt(3) / 2)


def embedding_to_mixed_family(E, split, c):
    lower, upper = (frozenset(s) for s in split)
    c = frac(c)
    if E.dim != 3:
        raise GeometryError("mixed families need a 3-dimensional embedding")
    if lower & upper or (lower | upper) != set(E.coords):
        raise GeometryError("split is not a partition of the elements")
    P = order_of(E)
    for y in lower:
        if not P.downset(y) <= lower:
            raise NotADownset(f"{y} is in the lower part but something below it is not")
    for x in upper:
        if not P.upset(x) <= upper:
            raise NotAnUpset(f"{x} is in the upper part but something above it is not")
    triangles = {}
    for x, p in E.coords.items():
        s = sum(p)
        if x in upper:
            if s < c:
                raise SideOfPlaneViolated(f"{x} lies below the plane")
            triangles[x] = Triangle(p, c, Orientation.DOWN)
        else:
            if s > c:
                raise SideOfPlaneViolated(f"{x} lies above the plane")
            triangles[x] = Triangle(p, c, Orientation.UP)
    return TriangleFamily(c, triangles)


def normalize_triangles(raw):
    """Map raw homothetic 2-D triangles into the sum-plane model.

    ``raw`` maps ids to three 2-D vertices.  All triangles must be positive or
    negative homothets of the first one (in sorted id order); negative
    homothets become UP triangles.  Coordinates are converted with ``frac``
    so rational input stays exact; float input is taken at its decimal repr.
    Returns a TriangleFamily at level 0.
    """
    ids = sorted(raw)
    if not ids:
        return TriangleFamily(0, {})
    ref = [tuple(frac(c) for c in v) for v in raw[ids[0]]]
    target = [(-2, 1, 1), (1, -2, 1), (1, 1, -2)]
    affine = _affine_from(ref, target)
    out = {}
    for x in ids:
        verts = [tuple(frac(c) for c in v) for v in raw[x]]
        scale = None
        for perm in permutations(verts):
            scale = _homothety_scale(ref, perm)
            if scale is not None:
                verts = perm
                break
        if scale is None:
            raise GeometryError(f"triangle {x} is not homothetic to the reference")
        corners = [affine(v) for v in verts]
        if scale > 0:
            apex = tuple(max(cn[k] for cn in corners) for k in range(3))
            out[x] = Triangle(apex, 0, Orientation.DOWN)
        else:
            apex = tuple(min(cn[k] for cn in corners) for k in range(3))
            out[x] = Triangle(apex, 0, Orientation.UP)
    return TriangleFamily(0, out)


def _homothety_scale(ref, verts):
    d = [(r[0] - ref[0][0], r[1] - ref[0][1]) for r in ref[1:]]
    e = [(v[0] - verts[0][0], v[1] - verts[0][1]) for v in verts[1:]]
    scale = None
    for (a, b), (p, q) in zip(d, e):
        for num, den in ((p, a), (q, b)):
            if den == 0:
                if num != 0:
                    return None
                continue
            s = num / den
            if scale is None:
                scale = s
            elif s != scale:
                return None
    if scale is None or scale == 0:
        return None
    return scale


def _affine_from(src, dst):
    # unique affine map R^2 -> R^3 sending src[k] to dst[k]
    (x0, y0), (x1, y1), (x2, y2) = src
    det = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
    if det == 0:
        raise GeometryError("reference triangle is degenerate")

    def f(p):
        u = ((p[0] - x0) * (y2 - y0) - (x2 - x0) * (p[1] - y0)) / det
        v = ((x1 - x0) * (p[1] - y0) - (p[0] - x0) * (y1 - y0)) / det
        return tuple(Fraction(dst[0][k]) + u * (dst[1][k] - dst[0][k]) + v * (dst[2][k] - dst[0][k])
                     for k in range(3))
    return f


@dataclass(frozen=True)
class BetaGraph:
    vertices: dict  # id -> exact rational (x, y) in the plane_xy chart
    edges: frozenset

    def __eq__(self, other):
        return (isinstance(other, BetaGraph) and self.vertices == other.vertices
                and self.edges == other.edges)

    def __hash__(self):
        return hash((frozenset(self.vertices.items()), self.edges))


def family_mode(F):
    return Mode.MIXED if Orientation.UP in F.orientations else Mode.CONTAINMENT


def beta_graph(F, G):
    if set(F.triangles) != set(G.vertices):
        raise RepresentationMismatch("family and graph have different vertex sets")
    if family_order(F, family_mode(F)) != bipartite_to_order(G):
        raise RepresentationMismatch("family order differs from the graph's order")
    pos = {x: plane_xy(t.barycenter()) for x, t in F.triangles.items()}
    return BetaGraph(_separate(pos), frozenset(G.edges))


def _separate(pos):
    groups = defaultdict(list)
    for x, p in pos.items():
        groups[p].append(x)
    if all(len(g) == 1 for g in groups.values()):
        return dict(pos)
    pts = sorted(groups)
    gaps = [abs(a[0] - b[0]) + abs(a[1] - b[1]) for a, b in combinations(pts, 2)]
    eps = min(gaps, default=Fraction(1)) / (4 * len(pos) + 4)
    out = {}
    for p, ids in groups.items():
        for k, x in enumerate(sorted(ids)):
            out[x] = (p[0] + k * eps, p[1] + k * eps * eps)
    return out


def _orient(a, b, c):
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(a, b, p):
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_intersect(a, b, c, d):
    """Closed segments [a,b] and [c,d] share a point (exact)."""
    o1, o2, o3, o4 = _orient(a, b, c), _orient(a, b, d), _orient(c, d, a), _orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    return ((o1 == 0 and _on_segment(a, b, c)) or (o2 == 0 and _on_segment(a, b, d))
            or (o3 == 0 and _on_segment(c, d, a)) or (o4 == 0 and _on_segment(c, d, b)))


def strongly_independent(G, e, f):
    if set(e) & set(f):
        return False
    return not any(G.has_edge(a, b) for a in e for b in f)


def check_disjoint_paths(B, G):
    """Pairs of strongly independent edges whose beta-graph segments meet."""
    edges = sorted(tuple(e) for e in G.edges)
    pts = B.vertices
    candidates = _segment_pairs(edges, pts)
    violations = []
    for e, f in candidates:
        if strongly_independent(G, e, f) and segments_intersect(pts[e[0]], pts[e[1]], pts[f[0]], pts[f[1]]):
            violations.append((e, f))
    return sorted(violations)


def _segment_pairs(edges, pts):
    if len(edges) < 300:
        return list(combinations(edges, 2))
    boxes = {}
    for e in edges:
        (x1, y1), (x2, y2) = pts[e[0]], pts[e[1]]
        boxes[e] = (min(x1, x2), min(y1, y2), max(x1, x2), max(y1, y2))
    span = max(max(b[2] - b[0], b[3] - b[1]) for b in boxes.values())
    cell = span if span > 0 else Fraction(1)
    grid = defaultdict(list)
    for e, (x0, y0, x1, y1) in boxes.items():
        for gx in range(math.floor(x0 / cell), math.floor(x1 / cell) + 1):
            for gy in range(math.floor(y0 / cell), math.floor(y1 / cell) + 1):
                grid[(gx, gy)].append(e)
    pairs = set()
    for bucket in grid.values():
        for e, f in combinations(bucket, 2):
            a, b = boxes[e], boxes[f]
            if a[0] <= b[2] and b[0] <= a[2] and a[1] <= b[3] and b[1] <= a[3]:
                pairs.add((e, f) if e < f else (f, e))
    return sorted(pairs)


__all__ = [
    "BetaGraph", "Embedding", "Mode", "Orientation", "Triangle", "TriangleFamily",
    "beta_graph", "check_disjoint_paths", "cone_triangle", "display_xy", "embedding_to_mixed_family",
    "embedding_to_realizer", "family_from_embedding", "family_order", "normalize_triangles",
    "order_of", "plane_xy", "realizer_to_embedding", "segments_intersect", "BipartiteGraph",
]
