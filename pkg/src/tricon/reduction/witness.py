"""Point/unit-triangle witnesses for compiled gadget graphs.

A satisfying assignment fixes the orientation of every clause rotor and the
state of every variable rotor.  ``schematic_witness`` turns those choices into
a drawing: every gadget is a fixed local layout (rotated, mirrored and
translated onto its Tutte position), every chain is laid along a polyline, and
every white vertex lands on an integer chart point.  ``triangle_witness`` then
reads whites as unit DOWN triangles, blacks as the smallest DOWN triangle over
their neighbours, and verifies the whole family exactly.

Distances below are Euclidean distances of the equilateral picture ``to_e``
of the chart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.spatial import cKDTree

from ..geometry import Triangle, TriangleFamily
from ..rotor import clause_signature, port_assignments
from .layout import (
    RotorShape,
    TemplateOverlap,
    apexes,
    rint,
    rotor_arms,
    sigma_pt,
    sigma_vec,
    spiral,
    swap_pt,
    u_apex,
)
from .verify import check_points


class UnsatisfiedClause(ValueError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"clause {index} has no true literal")


class VerificationFailed(RuntimeError):
    def __init__(self, message, check=None):
        self.check = check
        super().__init__(message)


class WitnessUnsupported(NotImplementedError):
    pass


# --- plane helpers -------------------------------------------------------------

R3 = math.sqrt(3)


def to_e(p):
    return (p[0] + p[1] / 2, p[1] * R3 / 2)


def to_c(q):
    return (q[0] - q[1] / R3, 2 * q[1] / R3)


def ang(p, c=(0.0, 0.0)):
    q = to_e(p)
    return math.atan2(q[1] - c[1], q[0] - c[0])


def rad(p, c=(0.0, 0.0)):
    q = to_e(p)
    return math.hypot(q[0] - c[0], q[1] - c[1])


def polar(r, a, c=(0.0, 0.0)):
    return to_c((c[0] + r * math.cos(a), c[1] + r * math.sin(a)))


def unit(d):
    n = math.hypot(*d)
    return (d[0] / n, d[1] / n)


def unit_e(d):
    n = math.hypot(*to_e(d))
    return (d[0] / n, d[1] / n)


def add(p, d, s=1.0):
    return (p[0] + s * d[0], p[1] + s * d[1])


def unwrap_dec(angles):
    """Angles made strictly decreasing, each within one turn of the previous."""
    out = [angles[0]]
    for a in angles[1:]:
        while a >= out[-1]:
            a -= 2 * math.pi
        while a < out[-1] - 2 * math.pi:
            a += 2 * math.pi
        out.append(a)
    return out


def bezier(p0, p1, p2, p3, n=32):
    out = []
    for i in range(n + 1):
        t = i / n
        a, b, c, d = (1 - t) ** 3, 3 * t * (1 - t) ** 2, 3 * t * t * (1 - t), t ** 3
        out.append((a * p0[0] + b * p1[0] + c * p2[0] + d * p3[0],
                    a * p0[1] + b * p1[1] + c * p2[1] + d * p3[1]))
    return out


def _spiral_c(r0, a0, r1, a1, center_e, steps=48):
    return [to_c(p) for p in spiral(r0, a0, r1, a1, steps, center_e)]


def _match_turn(start, target):
    """Shift the unwrapped targets by whole turns to minimise the largest rotation."""
    best = min(range(-3, 4), key=lambda s: max(abs(b + 2 * math.pi * s - a) for a, b in zip(start, target)))
    shifted = [b + 2 * math.pi * best for b in target]
    return shifted, max(abs(b - a) for a, b in zip(start, shifted))


# --- chart transforms ------------------------------------------------------------

@dataclass(frozen=True)
class Frame:
    """p -> sigma^k(mirror(p)) + shift, an exact symmetry of the containment order."""

    k: int = 0
    mirror: bool = False
    shift: tuple = (0, 0)

    def linear(self, p):
        if self.mirror:
            p = swap_pt(p)
        return sigma_pt(p, self.k)

    def __call__(self, p):
        q = self.linear(p)
        return (q[0] + self.shift[0], q[1] + self.shift[1])

    def vec(self, d):
        if self.mirror:
            d = (d[1], d[0])
        return sigma_vec(d, self.k)

    def point(self, p):
        """Exact image of an integer point."""
        q = self(p)
        return (int(q[0]), int(q[1])) if all(float(c).is_integer() for c in q) else q

    def big_apex(self, apex):
        # the centre apex (s, s, s) is fixed by mirror and sigma; translation adds the shift
        a = apex
        return (a[0] + self.shift[0], a[1] + self.shift[1], a[2] - self.shift[0] - self.shift[1])


# --- placing whites along polylines ---------------------------------------------

def _sample(poly, step=3.0):
    pts, ss = [], []
    s0 = 0.0
    for a, b in zip(poly, poly[1:]):
        ea, eb = to_e(a), to_e(b)
        L = math.dist(ea, eb)
        n = max(1, int(L / step))
        for j in range(n):
            pts.append((ea[0] + (eb[0] - ea[0]) * j / n, ea[1] + (eb[1] - ea[1]) * j / n))
            ss.append(s0 + L * j / n)
        s0 += L
    pts.append(to_e(poly[-1]))
    ss.append(s0)
    return np.array(pts), np.array(ss)


def _resample(poly, n, weight, min_step=2.5):
    """n + 1 points on the polyline with local step about ``weight(p, s)``.

    Spare points shorten only the longest steps (a cap), so that crowded
    stretches keep their spacing.  Returns the points and the slack
    (points available / points needed).
    """
    E = [to_e(p) for p in poly]
    segs = [math.dist(a, b) for a, b in zip(E, E[1:])]
    total = sum(segs)
    m = max(64, 8 * n)
    ds = total / m

    def at(s):
        for (a, b), L in zip(zip(E, E[1:]), segs):
            if s <= L:
                t = 0 if L == 0 else s / L
                return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
            s -= L
        return E[-1]

    w = np.array([weight(to_c(at((i + 0.5) * ds)), (i + 0.5) * ds) for i in range(m)])
    need = float(np.sum(ds / w))
    if n > need:
        lo, hi = 1e-6, float(w.max())
        for _ in range(60):
            h = (lo + hi) / 2
            if np.sum(ds / np.minimum(w, h)) > n:
                lo = h
            else:
                hi = h
        w = np.minimum(w, hi)
        if hi < min_step and total / n < min_step:
            raise TemplateOverlap(f"{n} whites do not fit on a polyline of length {total:.0f}")
    cost = np.concatenate([[0.0], np.cumsum(ds / w)])
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
        t = 0 if span == 0 else (target - cost[j]) / span
        out.append(to_c(at((j + t) * ds)))
    out[0], out[-1] = poly[0], poly[-1]
    return out, n / need


@dataclass
class Route:
    name: str
    whites: list
    pins: dict          # index into whites -> chart point
    i0: int             # first and last white placed along the polyline
    i1: int
    poly: list
    slack: float = 0.0


def place_routes(routes, pos, obstacles=(), sepf=2.5, wmin=2.0, wmax=40.0, selfgap=3.0):
    """Pin and resample every route; the local step is the clearance to other
    routes (and to far-away parts of the same route) divided by ``sepf``."""
    samples = [_sample(r.poly) for r in routes]
    obst = [_sample(o)[0] for o in obstacles]
    owner = np.concatenate([np.full(len(s[0]), i) for i, s in enumerate(samples)]
                           + [np.full(len(o), -1) for o in obst])
    allpts = np.vstack([s[0] for s in samples] + obst)
    tree = cKDTree(allpts)
    for i, r in enumerate(routes):
        own, own_s = samples[i]
        own_tree = cKDTree(own)

        def weight(p, s, i=i, own=own, own_s=own_s, own_tree=own_tree):
            e = to_e(p)
            d = math.inf
            for k in (16, 64, 256, len(allpts)):
                k = min(k, len(allpts))
                dist, idx = tree.query(e, k=k)
                mask = owner[idx] != i
                if mask.any():
                    d = float(dist[mask][0])
                    break
                if k == len(allpts):
                    break
            for rr in (8.0, 24.0, 72.0, 216.0):
                if rr > 3 * d:
                    break
                idx = own_tree.query_ball_point(e, rr)
                far = [k for k in idx if abs(own_s[k] - s) > selfgap * math.dist(own[k], e) + 6]
                if far:
                    d = min(d, min(math.dist(own[k], e) for k in far))
                    break
            return min(max(d / sepf, wmin), wmax)

        for k, p in r.pins.items():
            q = rint(p)
            w = r.whites[k]
            if w in pos and pos[w] != q:
                raise TemplateOverlap(f"{w} pinned twice")
            pos[w] = q
        free = r.whites[r.i0:r.i1 + 1]
        if len(free) < 2:
            raise TemplateOverlap(f"route {r.name} has no room")
        pts, r.slack = _resample(r.poly, len(free) - 1, weight)
        for w, p in zip(free, pts):
            pos.setdefault(w, rint(p))
    return pos


def _whites(chain, color):
    return [v for v in chain if color[v] == "W" and not v.endswith(".u")]


def _pins_for(chain, color, arms, a_start, a_end):
    ws = _whites(chain, color)
    pins = {}
    i0, i1 = 0, len(ws) - 1
    if a_start is not None:
        a = arms[a_start]
        pins[0] = a.start
        if a.kind == "V":
            pins[1] = a.exit
            i0 = 1
    if a_end is not None:
        a = arms[a_end]
        pins[len(ws) - 1] = a.start
        if a.kind == "V":
            pins[len(ws) - 2] = a.exit
            i1 = len(ws) - 2
    return ws, pins, i0, i1


def _arm_first(a):
    return a.start if a.kind == "U" else a.exit


def _tv_outline(sh):
    S = sh.S
    return [(S, S), (S, -2 * S), (-2 * S, S), (S, S)]


# --- clause gadget ------------------------------------------------------------------

# gate geometry in units of m: gate half-height, path offsets, red/inner/outer spacing
GATE = dict(hg=30, y1=-6, y2=10, b1=4, b2=12, a1=14, a2=6, c1=24, c2=30)
CLAUSE_PATHS = (("s1", 1), ("s1", 2), ("mV", 0), ("s2", 1), ("s2", 2), ("s3", 1), ("s3", 2), ("mU", 0))


@dataclass(frozen=True)
class ClauseShape:
    t: int = -347            # the cycle is the triangle X >= t, Y >= t, X + Y <= 1 - t
    m: int = 2               # gate scale
    corners: tuple = (41, 157, 275)
    rho_pad: int = 10
    rho_gap: int = 50
    approach: int = 40
    exit_radius: int = 680   # strands leave the gates radially up to here, then turn on tracks


def _canon_gate(t, ym, m):
    g = {k: m * v for k, v in GATE.items()}
    P = {"wa": (t, ym + g["hg"]), "wb": (t, ym - g["hg"])}
    for k in (1, 2):
        y = ym + g[f"y{k}"]
        P[f"in{k}"] = (t + g[f"a{k}"], y)
        P[f"r{k}"] = (t - g[f"b{k}"], y)
        P[f"out{k}"] = (t - g[f"b{k}"] - g[f"c{k}"], y)
    return P


def _port_groups(word, ports):
    """Paths per port, each group clockwise, for a monotone port assignment."""
    n = len(word)
    for r in range(n):
        seq = ports[r:] + ports[:r]
        if list(seq) == sorted(seq):
            break
    groups = [[] for _ in range(6)]
    for i in list(range(r, n)) + list(range(r)):
        groups[ports[i]].append(i)
    return groups


def clause_layout(chains, color, gid, orient, marks, cs=ClauseShape(), sh=RotorShape()):
    """Local layout of a clause gadget in its canonical frame (clockwise-handed).

    Returns pinned cycle positions, routes for the eight rotor paths, the gate
    points, the cycle polyline and the chosen port assignment.
    """
    word = clause_signature(*orient).sequence
    t, m = cs.t, cs.m
    cyc = chains[f"{gid}.cycle"][:-1]
    L = len(cyc)
    pos = {}
    ym = (1 - t) // 2
    gates = {}
    for s, k in (("g3", 0), ("g2", 1), ("g1", 2)):
        P = {n: sigma_pt(p, k) for n, p in _canon_gate(t, ym, m).items()}
        P["dir"] = sigma_vec((-1, 0), k)
        P["east"] = sigma_vec((1, 0), k)
        gates[s] = P
        G = marks[s]
        pos[cyc[(G + 1) % L]] = P["wa"]
        pos[cyc[(G - 1) % L]] = P["wb"]
    SE, SW, NW = (1 - 2 * t, t), (t, t), (t, 1 - 2 * t)
    pins = {(marks[g] + d) % L: pos[cyc[(marks[g] + d) % L]] for g in ("g1", "g2", "g3") for d in (1, -1)}
    for idx, p in zip(cs.corners, (SE, SW, NW)):
        pins[idx] = p
    keys = sorted(pins)
    for a, c in zip(keys, keys[1:] + [keys[0] + L]):
        pa, pc = pins[a], pins[c % L]
        n = (c - a) // 2
        for j in range(n + 1):
            pos[cyc[(a + 2 * j) % L]] = rint(add(pa, (pc[0] - pa[0], pc[1] - pa[1]), j / n))
    cycle_poly = [pos[cyc[i]] for i in range(1, L, 2)] + [pos[cyc[1]]]

    paths = []
    for i, (tag, k) in enumerate(CLAUSE_PATHS):
        letter = word[i]
        if tag in ("mU", "mV"):
            name = f"{gid}.{tag}"
        else:
            name = f"{gid}.{tag}.{'y' if letter == 'U' else 'g'}"
        chain = chains[name]
        if (chain[0] == f"{gid}.u") != (letter == "U"):
            raise TemplateOverlap(f"{name} does not start at the expected rotor centre")
        ws = [v for v in chain[1:] if color[v] == "W"]
        end = {}
        if tag.startswith("s"):
            g = gates["g" + tag[1]]
            end[len(ws) - 1] = g[f"r{k}"]
            end[len(ws) - 2] = g[f"in{k}"]
            approach = add(g[f"in{k}"], g["east"], cs.approach)
            last = len(ws) - 2
        elif tag == "mU":
            z = pos[cyc[marks["zU"]]]
            end[len(ws) - 1] = z
            approach = add(z, (1, 0), cs.approach)
            last = len(ws) - 1
        else:
            zi = marks["zV"]
            p1, p2 = pos[cyc[zi - 1]], pos[cyc[zi + 1]]
            d = abs(p1[0] - p2[0]) // 2
            w = ((p1[0] + p2[0]) // 2, t + max(1, d // 2))
            end[len(ws) - 1] = w
            approach = add(w, (0, 1), cs.approach)
            last = len(ws) - 1
        paths.append(dict(name=name, ws=ws, end=end, approach=approach, last=last))

    best = None
    for asg in port_assignments(word):
        groups = _port_groups(word, asg.ports)
        arms = rotor_arms([[(f"o{i}", i) for i in g] for g in groups], sh)
        alpha = []
        for i in range(len(paths)):
            a = arms[i]
            alpha.append(ang(add(_arm_first(a), unit(a.direction), sh.lead)))
        al = unwrap_dec(alpha)
        be, cost = _match_turn(al, unwrap_dec([ang(P["approach"]) for P in paths]))
        if best is None or cost < best[0]:
            best = (cost, asg, arms, al, be)
    if best is None:
        raise TemplateOverlap(f"no port assignment for {word}")
    _, asg, arms, al, be = best

    lead_ends = []
    for i, P in enumerate(paths):
        a = arms[i]
        P["end"][0] = a.start
        if a.kind == "U":
            P["i0"], P["first"] = 0, a.start
        else:
            P["end"][1] = a.exit
            P["i0"], P["first"] = 1, a.exit
        lead_ends.append(add(P["first"], unit(a.direction), sh.lead))
    rho_a = max(rad(p) for p in lead_ends) + cs.rho_pad
    rho_b = rho_a + cs.rho_gap
    routes = []
    for i, P in enumerate(paths):
        sp = _spiral_c(rho_a, al[i], rho_b, be[i], (0.0, 0.0))
        poly = [P["first"], lead_ends[i]] + sp + [P["approach"], P["end"][P["last"]]]
        routes.append(Route(P["name"], P["ws"], P["end"], P["i0"], P["last"], poly))
    return dict(pos=pos, routes=routes, gates=gates, cycle_poly=cycle_poly, ports=asg.ports)


# --- three-occurrence variable gadget -------------------------------------------

# clockwise port contents (side 1, tip 2, side 3, tip 1, side 2, tip 3) for TRUE and FALSE
VG3_TRUE = (
    (("c1", "c1.W"), ("mU", "mU"), ("c1", "c1.E")), (("c2", "c2.W"), ("mV", "mV"), ("c2", "c2.E")),
    (("p4", "p4.E"), ("p4", "p4.W")), (("p3", "p3.E"), ("p3", "p3.W")),
    (("p2", "p2.E"), ("p2", "p2.W")), (("p1", "p1.E"), ("p1", "p1.W")),
)
VG3_FALSE = (
    (("p2", "p2.W"), ("mU", "mU"), ("p2", "p2.E")), (("p3", "p3.W"), ("p3", "p3.E")),
    (("p4", "p4.W"), ("p4", "p4.E")), (("c2", "c2.E"), ("c2", "c2.W")),
    (("c1", "c1.E"), ("c1", "c1.W")), (("p1", "p1.W"), ("mV", "mV"), ("p1", "p1.E")),
)
_LOOPS = (("cyan.t1", "c1.E", "c2.W"), ("pink.t1", "p1.E", "p2.W"))
_PETALS = (("pink.t2a", "p2.E", "s1", "pink.t2b", "p3.W"), ("pink.t3a", "p3.E", "s2", "pink.t3b", "p4.W"))
VG3_ARM = {("W", "cyan"): "c1.W", ("W", "pink"): "p1.W", ("E", "cyan"): "c2.E",
           ("E", "pink"): "p4.E", ("M", "mU"): "mU", ("M", "mV"): "mV"}


@dataclass(frozen=True)
class VariableShape:
    ell: int = 40      # petal lead length
    tk: float = 1.0    # loop bulge relative to the chord
    tipd: int = 10
    lat: int = 6
    g: int = 10
    gS: int = 30       # shield clearance
    pad: int = 20
    gap: int = 60      # width of the routing ring


def vg3_routes(chains, color, gid, state, rot, vs=VariableShape(), sh=RotorShape()):
    """Local routes of a variable gadget's internal loops (rotor at the origin)."""
    pattern = VG3_TRUE if state else VG3_FALSE
    Q = list(pattern[2 * rot:] + pattern[:2 * rot])
    arms = rotor_arms(Q, sh)
    routes = []

    def route(name, a0, a1, mid, extra=None, i0=None, i1=None):
        ws, pins, j0, j1 = _pins_for(chains[name], color, arms, a0, a1)
        for k, p in (extra or {}).items():
            pins[k % len(ws)] = p
        j0 = j0 if i0 is None else i0
        j1 = j1 if i1 is None else i1 % len(ws)
        routes.append(Route(name, ws, pins, j0, j1, [pins[j0]] + mid + [pins[j1]]))

    for suf, x, y in _LOOPS:
        ax, ay = arms[x], arms[y]
        p, q = _arm_first(ax), _arm_first(ay)
        ell = vs.tk * math.dist(to_e(p), to_e(q))
        lp = bezier(p, add(p, unit_e(ax.direction), ell), add(q, unit_e(ay.direction), ell), q)
        route(f"{gid}.{suf}", x, y, lp[1:-1])
    tips = {}
    for sa, x, s, sb, y in _PETALS:
        P = add(_arm_first(arms[x]), unit_e(arms[x].direction), vs.ell)
        Qp = add(_arm_first(arms[y]), unit_e(arms[y].direction), vs.ell)
        mid = ((P[0] + Qp[0]) / 2, (P[1] + Qp[1]) / 2)
        o = _outward(mid)
        tip = add(mid, o, vs.tipd)
        d = unit((Qp[0] - P[0], Qp[1] - P[1]))
        tips[s] = (tip, o)
        if s == "s1":   # black tip: three whites around it
            route(f"{gid}.{sa}", x, None, [P], {-1: add(tip, d, -vs.lat)}, i1=-1)
            route(f"{gid}.{sb}", None, y, [Qp], {0: add(tip, d, vs.lat)}, i0=0)
        else:
            route(f"{gid}.{sa}", x, None, [P], {-1: tip}, i1=-1)
            route(f"{gid}.{sb}", None, y, [Qp], {0: tip}, i0=0)
    (t1, o1), (t2, o2) = tips["s1"], tips["s2"]
    a1p, a2p = add(t1, o1, vs.g), add(t2, o2, vs.g)
    r = max(rad(a1p), rad(a2p)) + vs.gS
    th1, th2 = ang(a1p), ang(a2p)
    while th2 - th1 > math.pi:
        th2 -= 2 * math.pi
    while th2 - th1 < -math.pi:
        th2 += 2 * math.pi
    arc = _spiral_c(r, th1, r, th2, (0.0, 0.0), 24)
    route(f"{gid}.shield", None, None, arc + [a2p], {0: a1p, -1: t2}, i0=0, i1=-1)
    return arms, routes


def _outward(p):
    e = to_e(p)
    n = math.hypot(*e)
    return to_c((e[0] / n, e[1] / n))


# --- the drawing -------------------------------------------------------------------

@dataclass
class SchematicDrawing:
    points: dict                 # vertex -> (Fraction, Fraction) chart point
    assignment: dict
    orientations: dict           # clause gadget -> literal values (strand orientations)
    states: dict                 # variable gadget -> TRUE / FALSE rotor state
    ports: dict                  # clause gadget -> port of each rotor path
    strands: dict                # incidence edge -> {"left": chain, "right": chain}
    scale: int = 3000
    big: dict = field(default_factory=dict)   # rotor centre u -> apex
    slack: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "points": {v: [_fr(x), _fr(y)] for v, (x, y) in sorted(self.points.items())},
            "assignment": {str(k): v for k, v in sorted(self.assignment.items())},
            "orientations": {k: list(v) for k, v in self.orientations.items()},
            "states": dict(self.states),
            "ports": {k: list(v) for k, v in self.ports.items()},
            "strands": self.strands,
            "big": {k: [_fr(c) for c in v] for k, v in sorted(self.big.items())},
            "scale": self.scale,
        }


def _fr(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _clause_orientations(G, assignment):
    out = {}
    for gid, info in sorted(G.meta["clauses"].items(), key=lambda kv: int(kv[0][1:])):
        vals = tuple(bool(assignment[abs(l)]) == (l > 0) for l in info["literals"])
        if not any(vals):
            raise UnsatisfiedClause(int(gid[1:]))
        out[gid] = vals
    return out


class _Planner:
    def __init__(self, G, assignment, scale, cs=ClauseShape(), vs=VariableShape(), sh=RotorShape()):
        if G.variant != "GPHI":
            raise WitnessUnsupported("witness drawings exist for the degree-5 compilation only")
        for gid, info in G.meta["variables"].items():
            if info["kind"] != "vg3":
                raise WitnessUnsupported(f"{gid}: witness layout covers three-occurrence variables only")
        self.G, self.assignment, self.K = G, assignment, scale
        self.cs, self.vs, self.sh = cs, vs, sh
        self.color = {v: "W" for v in G.graph.white}
        self.color.update({v: "B" for v in G.graph.black})
        self.chains = G.chains
        self.orient = _clause_orientations(G, assignment)
        self.centre_e = {}
        for v, (x, y) in G.meta["layout"].items():
            gid = v if v.startswith("C") else "X" + v[1:]
            e = (float(Fraction(x)) * scale, float(Fraction(y)) * scale)
            shift = rint(to_c(e))
            self.centre_e[gid] = shift

    def edge_angle(self, edge, from_clause):
        clause = edge.split(".")[0]
        var = "X" + str(abs(self.G.meta["clauses"][clause]["literals"][int(edge.split(".")[1]) - 1]))
        a, b = to_e(self.centre_e[clause]), to_e(self.centre_e[var])
        if not from_clause:
            a, b = b, a
        return math.atan2(b[1] - a[1], b[0] - a[0])

    def run(self):
        pos, routes, obstacles, big = {}, [], [], {}
        strand_parts = {}
        ports = {}
        for gid in sorted(self.orient):
            self._clause(gid, pos, routes, obstacles, big, strand_parts, ports)
        states = {}
        for gid in sorted(self.G.meta["variables"]):
            self._variable(gid, pos, routes, obstacles, big, strand_parts, states)
        sides = self._strands(routes, strand_parts)
        place_routes(routes, pos, obstacles)
        seen = {}
        for w, p in pos.items():
            if p in seen:
                raise TemplateOverlap(f"{w} and {seen[p]} share the point {p}")
            seen[p] = w
        slack = {r.name: r.slack for r in routes}
        return pos, big, states, ports, sides, slack

    # clause gadgets: canonical layout, rotated so the gates face their edges
    def _clause(self, gid, pos, routes, obstacles, big, strand_parts, ports):
        G, cs = self.G, self.cs
        marks = G.meta["clauses"][gid]["marks"]
        mirror = G.meta["clauses"][gid]["handedness"] == "ccw"
        loc = clause_layout(self.chains, self.color, gid, self.orient[gid], marks, cs, self.sh)
        shift = self.centre_e[gid]
        c_e = to_e(shift)
        best = None
        for k in range(3):
            fr = Frame(k, mirror, shift)
            items = []
            for s in (1, 2, 3):
                g = loc["gates"][f"g{s}"]
                mid = fr(((g["out1"][0] + g["out2"][0]) / 2, (g["out1"][1] + g["out2"][1]) / 2))
                items.append((ang(mid, c_e), self.edge_angle(f"{gid}.{s}", True)))
            items.sort(reverse=True)
            al = unwrap_dec([a for a, _ in items])
            _, cost = _match_turn(al, unwrap_dec([th for _, th in items]))
            if best is None or cost < best[0]:
                best = (cost, fr)
        fr = best[1]
        for v, p in loc["pos"].items():
            pos[v] = fr.point(p)
        for r in loc["routes"]:
            routes.append(Route(r.name, r.whites, {k: fr.point(p) for k, p in r.pins.items()},
                                r.i0, r.i1, [fr(p) for p in r.poly]))
        obstacles.append([fr(p) for p in loc["cycle_poly"]])
        obstacles.append([fr(p) for p in _tv_outline(self.sh)])
        big[f"{gid}.u"] = fr.big_apex(u_apex(self.sh))
        ports[gid] = tuple(loc["ports"])
        red_at = {r.whites[-1]: r.pins[len(r.whites) - 1] for r in loc["routes"]}
        for s in (1, 2, 3):
            g = loc["gates"][f"g{s}"]
            edge = f"{gid}.{s}"
            for col in ("y", "g"):
                red = self.chains[f"{gid}.s{s}.{col}"][-1]
                slot = 1 if red_at[red] == g["r1"] else 2
                if red_at[red] != g[f"r{slot}"]:
                    raise TemplateOverlap(f"{red} is not on its gate")
                strand_parts.setdefault(edge, {})[col] = {
                    "clause_out": fr.point(g[f"out{slot}"]), "clause_red": fr.point(red_at[red]),
                    "clause_dir": fr.vec(g["dir"]), "clause_centre": c_e,
                }

    def _variable(self, gid, pos, routes, obstacles, big, strand_parts, states):
        G, vs, sh = self.G, self.vs, self.sh
        var = int(gid[1:])
        state = bool(self.assignment[var])
        states[gid] = state
        ends = G.meta["variables"][gid]["ends"]
        shift = self.centre_e[gid]
        c_e = to_e(shift)
        best = None
        for rot in range(3):
            arms, loc = vg3_routes(self.chains, self.color, gid, state, rot, vs, sh)
            items = []
            for end in ("W", "M", "E"):
                edge = ends[end]
                info = G.meta["strands"][edge]
                th = self.edge_angle(edge, False)
                for pid in (info["yellow"], info["green"]):
                    a = arms[VG3_ARM[(end, pid)]]
                    le = add(_arm_first(a), unit(a.direction), sh.lead)
                    items.append((ang(le), th, edge, pid, a, le))
            items.sort(key=lambda it: it[0], reverse=True)
            al = unwrap_dec([it[0] for it in items])
            be, cost = _match_turn(al, unwrap_dec([it[1] - 1e-6 * i for i, it in enumerate(items)]))
            if best is None or cost < best[0]:
                best = (cost, rot, arms, loc, items)
        _, rot, arms, loc, items = best
        fr = Frame(0, False, shift)
        for r in loc:
            routes.append(Route(r.name, r.whites, {k: fr.point(rint(p)) for k, p in r.pins.items()},
                                r.i0, r.i1, [fr(p) for p in r.poly]))
        obstacles.append([fr(p) for p in _tv_outline(sh)])
        big[f"{gid}.u"] = fr.big_apex(u_apex(sh))
        inner = max(rad(p) for r in loc for p in r.poly)
        inner = max([inner] + [rad(it[5]) for it in items]) + vs.pad
        for _, th, edge, pid, a, le in items:
            col = "y" if G.meta["strands"][edge]["yellow"] == pid else "g"
            name = f"S.{edge}.{col}"
            ws, pins, i0, _ = _pins_for(self.chains[name], self.color, arms, VG3_ARM[(
                next(k for k, e in ends.items() if e == edge), pid)], None)
            part = strand_parts.setdefault(edge, {}).setdefault(col, {})
            part.update(var_pins={k: fr.point(rint(p)) for k, p in pins.items()}, var_i0=i0,
                        var_first=fr(_arm_first(a)), var_lead=fr(le), var_angle=ang(le),
                        var_centre=c_e, var_inner=inner, whites=ws)

    def _strands(self, routes, strand_parts):
        """One route per strand chain: variable ring, straight run, clause ring."""
        vs, cs = self.vs, self.cs
        half, gap = 30.0, 30.0
        ring = 7 * gap
        by_var, by_clause = {}, {}
        sides = {}
        for edge, parts in strand_parts.items():
            clause = edge.split(".")[0]
            th_c = self.edge_angle(edge, True)
            th_v = self.edge_angle(edge, False)
            # left/right as seen looking outwards from each gadget
            y, g = parts["y"], parts["g"]
            var_left = "y" if _rel_angle(y["var_angle"], th_v) > _rel_angle(g["var_angle"], th_v) else "g"
            cy = _rel_angle(ang(y["clause_out"], y["clause_centre"]), th_c)
            cg = _rel_angle(ang(g["clause_out"], g["clause_centre"]), th_c)
            clause_left = "y" if cy > cg else "g"
            if var_left == clause_left:
                raise VerificationFailed(f"strand {edge} would cross itself between its gadgets")
            sides[edge] = {"left": f"S.{edge}.{var_left}", "right": f"S.{edge}.{clause_left}"}
            for col, part in parts.items():
                sgn = 1 if col == var_left else -1
                part["v_target"] = th_v + sgn * half / (part["var_inner"] + ring)
                part["c_target"] = th_c - sgn * half / (cs.exit_radius + ring)
            by_var.setdefault(y["var_centre"], []).extend(parts.values())
            by_clause.setdefault(clause, []).extend(parts.values())
        # each ring keeps the cyclic order of its paths and turns as little as possible
        for group in by_var.values():
            group.sort(key=lambda p: p["var_angle"], reverse=True)
            al = unwrap_dec([p["var_angle"] for p in group])
            be, _ = _match_turn(al, unwrap_dec([p["v_target"] for p in group]))
            rt = _tracks(list(zip(al, be)), group[0]["var_inner"], gap)
            for k, p in enumerate(group):
                p["v_ring"] = (al[k], rt[k], be[k])
        for group in by_clause.values():
            for p in group:
                c = p["clause_centre"]
                p["c_exit"] = _ray_to_radius(to_e(p["clause_out"]), to_e(p["clause_dir"]), cs.exit_radius, c)
                p["c_angle"] = math.atan2(p["c_exit"][1] - c[1], p["c_exit"][0] - c[0])
            group.sort(key=lambda p: p["c_angle"], reverse=True)
            al = unwrap_dec([p["c_angle"] for p in group])
            be, _ = _match_turn(al, unwrap_dec([p["c_target"] for p in group]))
            rt = _tracks(list(zip(al, be)), cs.exit_radius, gap)
            for k, p in enumerate(group):
                p["c_ring"] = (al[k], rt[k], be[k])
        for edge, parts in sorted(strand_parts.items()):
            for col, p in parts.items():
                ri = p["var_inner"]
                a, r, b = p["v_ring"]
                poly = [p["var_first"], p["var_lead"]]
                poly += _track_path(ri, a, r, b, ri + ring, p["var_centre"])
                a, r, b = p["c_ring"]
                poly += _track_path(cs.exit_radius, a, r, b, cs.exit_radius + ring, p["clause_centre"])[::-1]
                poly += [p["clause_out"]]
                ws = p["whites"]
                pins = dict(p["var_pins"])
                pins[len(ws) - 1] = p["clause_red"]
                pins[len(ws) - 2] = p["clause_out"]
                routes.append(Route(f"S.{edge}.{col}", ws, pins, p["var_i0"], len(ws) - 2, poly))
        return sides


def _tracks(group, r0, gap):
    """Track radius per path of a ring: within each turning direction the path
    furthest along that direction runs innermost, so tracks never cross."""
    idx = range(len(group))
    starts = [a for a, _ in group]
    spare = 2 * math.pi - (max(starts) - min(starts))
    if len(group) > 1 and max(abs(b - a) for a, b in group) >= spare - 0.05:
        raise TemplateOverlap("a ring path would turn past the other end of its group")
    cw = sorted((i for i in idx if group[i][1] < group[i][0]), key=lambda i: group[i][0])
    ccw = sorted((i for i in idx if group[i][1] >= group[i][0]), key=lambda i: -group[i][0])
    out = {}
    for lst in (cw, ccw):
        for rank, i in enumerate(lst):
            out[i] = r0 + gap * (rank + 1)
    return out


def _track_path(r0, a, rt, b, r1, centre, step=0.02):
    n = max(2, int(abs(b - a) / step))
    arc = [polar(rt, a + (b - a) * i / n, centre) for i in range(n + 1)]
    return [polar(r0, a, centre)] + arc + [polar(r1, b, centre)]


def _rel_angle(a, ref):
    return (a - ref + math.pi) % (2 * math.pi) - math.pi


def _ray_to_radius(p, d, radius, c):
    px, py = p[0] - c[0], p[1] - c[1]
    n = math.hypot(*d)
    dx, dy = d[0] / n, d[1] / n
    b = px * dx + py * dy
    cc = px * px + py * py - radius * radius
    if cc > 0:
        raise TemplateOverlap("a gate lies outside the clause's exit ring")
    t = -b + math.sqrt(b * b - cc)
    return (p[0] + t * dx, p[1] + t * dy)


def schematic_witness(G, assignment, scale=3000):
    """Schematic drawing of G for a satisfying assignment.

    Raises UnsatisfiedClause(index) if some clause (1-based) gets no true
    literal; TemplateOverlap if the layout does not fit at this scale.
    """
    assignment = {int(k): bool(v) for k, v in assignment.items()}
    planner = _Planner(G, assignment, scale)
    pos, big, states, ports, sides, slack = planner.run()
    points = {}
    for v in G.graph.white:
        if v in big:
            s = big[v]
            points[v] = (Fraction(s[0]) - Fraction(1, 3), Fraction(s[1]) - Fraction(1, 3))
        else:
            points[v] = (Fraction(pos[v][0]), Fraction(pos[v][1]))
    nbrs = {}
    for w, b in G.graph.edges:
        nbrs.setdefault(b, []).append(points[w])
    for b, ps in nbrs.items():
        points[b] = (sum(p[0] for p in ps) / len(ps), sum(p[1] for p in ps) / len(ps))
    return SchematicDrawing(points, assignment, planner.orient, states, ports, sides,
                            scale, big, slack)


def _family(S, G):
    wa = {}
    for w in G.graph.white:
        if w in S.big:
            wa[w] = tuple(int(c) for c in S.big[w])
        else:
            x, y = S.points[w]
            if x.denominator != 1 or y.denominator != 1:
                raise TemplateOverlap(f"white {w} is not on a lattice point")
            wa[w] = (int(x), int(y), 1 - int(x) - int(y))
    nbrs = {b: [] for b in G.graph.black}
    for w, b in G.graph.edges:
        nbrs[b].append(w)
    ba = {b: tuple(max(wa[w][k] for w in ns) for k in range(3)) for b, ns in nbrs.items()}
    return wa, ba


def triangle_witness(S, G, retries=3):
    """Exact triangle family (level 0: whites are unit triangles) realising G.

    If the drawing cannot be turned into distinct lattice points the whole
    layout is redone at twice the scale, at most ``retries`` times.
    """
    last = None
    for attempt in range(retries + 1):
        try:
            if attempt:
                S = schematic_witness(G, S.assignment, S.scale * 2)
            wa, ba = _family(S, G)
            break
        except TemplateOverlap as exc:
            last = exc
    else:
        raise TemplateOverlap(f"no fit after {retries} scale-ups: {last}")
    res = check_points(wa, ba, G.graph.edges)
    if not res.ok:
        raise VerificationFailed(f"{len(res.missing)} missing and {len(res.extra)} extra comparabilities", res)
    tris = {v: Triangle(a, 0) for v, a in {**wa, **ba}.items()}
    return TriangleFamily(0, tris)


def witness(G, assignment, scale=3000):
    """Schematic drawing followed by the verified triangle family."""
    return triangle_witness(schematic_witness(G, assignment, scale), G)
