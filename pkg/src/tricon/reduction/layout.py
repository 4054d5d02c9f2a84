"""Integer point geometry for triangle witnesses.

Coordinates are a chart (X, Y) of the plane p1 + p2 + p3 = 0: a white vertex
at (X, Y) is the unit DOWN triangle with apex (X, Y, 1 - X - Y); a black vertex
is the smallest DOWN triangle holding its neighbours.  The big white centre of
a rotor has apex (s, s, s).  The map sigma(p) = (p3, p1, p2) is a rotation of
the chart by a third of a turn that preserves containment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


class TemplateOverlap(RuntimeError):
    pass


def white_apex(pt):
    x, y = pt
    return (x, y, 1 - x - y)


def sigma_pt(pt, k=1):
    """Rotate a chart point with sigma, k times."""
    x, y = pt
    for _ in range(k % 3):
        x, y = 1 - x - y, x
    return (x, y)


def sigma_vec(d, k=1):
    dx, dy = d
    for _ in range(k % 3):
        dx, dy = -dx - dy, dx
    return (dx, dy)


def swap_pt(pt):
    """Mirror (X, Y) -> (Y, X); reverses orientation and preserves containment."""
    return (pt[1], pt[0])


# --- polylines ---------------------------------------------------------------

def poly_length(poly):
    return sum(math.dist(a, b) for a, b in zip(poly, poly[1:]))


def point_at(poly, dist):
    for a, b in zip(poly, poly[1:]):
        seg = math.dist(a, b)
        if dist <= seg or b is poly[-1]:
            t = 0.0 if seg == 0 else min(dist / seg, 1.0)
            return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
        dist -= seg
    return poly[-1]


def resample(poly, n, weight=None):
    """n + 1 points along the polyline from its first to its last point.

    Steps are proportional to ``weight(point)`` when given (integrated on a
    fine grid), else uniform in arc length.
    """
    total = poly_length(poly)
    if n <= 0:
        raise TemplateOverlap("a polyline piece needs at least one step")
    if weight is None:
        return [point_at(poly, total * i / n) for i in range(n + 1)]
    m = max(64, 8 * n)
    ds = total / m
    cost = [0.0]
    for i in range(m):
        p = point_at(poly, (i + 0.5) * ds)
        cost.append(cost[-1] + ds / weight(p))
    out = []
    j = 0
    for i in range(n + 1):
        target = cost[-1] * i / n
        while j < m and cost[j + 1] < target:
            j += 1
        if j >= m:
            out.append(poly[-1])
            continue
        span = cost[j + 1] - cost[j]
        t = 0.0 if span == 0 else (target - cost[j]) / span
        out.append(point_at(poly, (j + t) * ds))
    out[0], out[-1] = poly[0], poly[-1]
    return out


def rint(p):
    return (int(round(p[0])), int(round(p[1])))


def spiral(r0, a0, r1, a1, steps=48, center=(0.0, 0.0)):
    """Points with radius and angle interpolated linearly (angles unwrapped)."""
    cx, cy = center
    out = []
    for i in range(steps + 1):
        t = i / steps
        r = r0 + t * (r1 - r0)
        a = a0 + t * (a1 - a0)
        out.append((cx + r * math.cos(a), cy + r * math.sin(a)))
    return out


def ray_to_radius(p, d, radius, center=(0.0, 0.0)):
    """First point p + t d (t >= 0) at distance `radius` from the centre."""
    px, py = p[0] - center[0], p[1] - center[1]
    dx, dy = d
    a = dx * dx + dy * dy
    b = 2 * (px * dx + py * dy)
    c = px * px + py * py - radius * radius
    disc = b * b - 4 * a * c
    if disc < 0 or c > 0:
        raise TemplateOverlap("ray starts outside the routing ring")
    t = (-b + math.sqrt(disc)) / (2 * a)
    return (p[0] + t * dx, p[1] + t * dy)


# --- rotor --------------------------------------------------------------------

@dataclass(frozen=True)
class RotorShape:
    s: int = 24     # T_u apex (s, s, s)
    S: int = 72     # T_v reaches X = S, Y = S
    f: int = 12     # tip whites sit f away from a corner
    f2: int = 4     # diagonal tip white
    a: int = 6      # raised / lowered U arms clear the shadow strip by a
    e1: int = 6     # outer U arms stand e1 beyond the side
    en: int = 16    # the neutral U arm stands further out
    lead: int = 30  # length of the straight lead after the first white

    def scaled(self, m):
        return RotorShape(*(m * getattr(self, k) for k in self.__dataclass_fields__))


@dataclass
class Arm:
    owner: str
    kind: str           # "U" (owner is a black containing T_u) or "V" (owner is a white in T_v)
    start: tuple        # first white of the path (U: the arm white, V: the owner itself)
    exit: tuple         # V only: first white after the owner, already outside T_v
    direction: tuple    # direction of the lead


# canonical sector: tip 3 at corner (S, S) followed clockwise by side 1 (X = S)
def _canonical_s_port(arms, sh):
    """Positions of U arm whites on side X = S, arms given clockwise (top to bottom)."""
    s, S, a, e1, en = sh.s, sh.S, sh.a, sh.e1, sh.en
    top = (S + e1, s + a)
    bottom = (S + e1, -s - S - e1 - a)
    neutral = (S + en, -(S + en) // 2)
    n = len(arms)
    if n == 1:
        return [(neutral, (1, 0))]
    if n == 2:
        return [(top, (1, 0)), (bottom, (1, -1))]
    if n == 3:
        return [(top, (1, 0)), (neutral, (1, 0)), (bottom, (1, -1))]
    raise TemplateOverlap(f"{n} paths cannot share a side port")


def _canonical_t_port(arms, sh):
    """Owner positions and arm directions at corner (S, S), arms clockwise."""
    S, f, f2 = sh.S, sh.f, sh.f2
    n = len(arms)
    if n > 3:
        raise TemplateOverlap(f"{n} paths cannot share a corner port")
    dirs = {1: [(1, 1)], 2: [(0, 1), (1, 0)], 3: [(0, 1), (1, 1), (1, 0)]}[n]
    owners = {}
    for (owner, _), d in zip(arms, dirs):
        owners.setdefault(owner, []).append(d)
    pos = {}
    for owner, ds in owners.items():
        key = frozenset(ds)
        if key == {(1, 1)}:
            pos[owner] = (S, S) if n == 1 else (S - f2, S - f2)
        elif key == {(0, 1)} or key == {(0, 1), (1, 1)}:
            pos[owner] = (S - f, S)
        elif key == {(1, 0)} or key == {(1, 1), (1, 0)}:
            pos[owner] = (S, S - f)
        elif key == {(0, 1), (1, 0)}:
            pos[owner] = (S - f, S - f) if n == 3 else (S, S)
        else:
            raise TemplateOverlap("unsupported arm pattern at a corner port")
    return [(pos[owner], d) for (owner, _), d in zip(arms, dirs)]


def _exit_point(p, d, S):
    """First lattice point on p + t d that has left T_v (X > S or Y > S)."""
    t = 1
    while not (p[0] + t * d[0] > S or p[1] + t * d[1] > S):
        t += 1
    return (p[0] + (t + 1) * d[0], p[1] + (t + 1) * d[1])


def rotor_arms(ports, shape=RotorShape()):
    """Arm geometry of a rotor centred at the origin.

    ``ports`` has six entries, the geometric ports in clockwise order
    (side 1, tip 2, side 3, tip 1, side 2, tip 3); each is a clockwise list of
    (owner, arm id) pairs.  Even ports are sides (U), odd ports are tips (V).
    """
    # geometric port i -> (sector rotation k, is_tip)
    where = {0: (0, False), 1: (2, True), 2: (2, False), 3: (1, True), 4: (1, False), 5: (0, True)}
    out = {}
    for i, arms in enumerate(ports):
        if not arms:
            continue
        k, tip = where[i]
        canon = _canonical_t_port(arms, shape) if tip else _canonical_s_port(arms, shape)
        for (owner, arm_id), (p, d) in zip(arms, canon):
            if tip:
                q = _exit_point(p, d, shape.S)
                out[arm_id] = Arm(owner, "V", sigma_pt(p, k), sigma_pt(q, k), sigma_vec(d, k))
            else:
                out[arm_id] = Arm(owner, "U", sigma_pt(p, k), None, sigma_vec(d, k))
    return out


def u_apex(shape):
    return (shape.s, shape.s, shape.s)


# --- filling chains -------------------------------------------------------------

def chain_whites(chain, color):
    return [v for v in chain if color[v] == "W"]


def fill_chain(chain, color, poly, pos, weight=None):
    """Place the whites of `chain` along `poly`.

    The first and last whites of the chain go to the ends of the polyline (they
    may already be placed; then they must agree).
    """
    ws = chain_whites(chain, color)
    if len(ws) < 2:
        raise TemplateOverlap("chain has fewer than two whites")
    pts = resample(poly, len(ws) - 1, weight)
    for w, p in zip(ws, pts):
        q = rint(p)
        if w in pos and pos[w] != q:
            if (w is ws[0] or w is ws[-1]):
                continue
            raise TemplateOverlap(f"{w} placed twice")
        pos.setdefault(w, q)
    return ws


def apexes(graph, pos, big):
    """White apexes from positions (big whites given explicitly) and black maxima."""
    wa = {}
    for w in graph.white:
        if w in big:
            wa[w] = tuple(big[w])
        else:
            if w not in pos:
                raise TemplateOverlap(f"white {w} was never placed")
            wa[w] = white_apex(pos[w])
    nbrs = {b: [] for b in graph.black}
    for w, b in graph.edges:
        nbrs[b].append(w)
    ba = {b: tuple(max(wa[w][k] for w in ns) for k in range(3)) for b, ns in nbrs.items()}
    return wa, ba
