"""Compilation of planar 3-SAT instances into bipartite gadget graphs.

The graph is assembled from branch vertices joined by chains (paths whose
inner vertices have degree 2).  Chains carry their vertex lists so that the
witness generator can lay every path out along a polyline.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from ..order import BipartiteGraph
from .planar import tutte_layout


class CompileError(ValueError):
    pass


class UnsupportedOccurrenceCount(CompileError):
    def __init__(self, variable, count):
        self.variable = variable
        super().__init__(f"variable {variable} occurs {count} times; gadgets exist for 2, 3 or 4")


@dataclass(frozen=True)
class LengthConfig:
    cycle: int = 314
    rotor_path: int = 50
    segment: int = 20
    strand_factor: int = 500

    def __post_init__(self):
        if self.cycle % 2 or self.cycle < 40:
            raise CompileError("the enclosing cycle needs an even length of at least 40")
        if min(self.rotor_path, self.segment, self.strand_factor) < 4:
            raise CompileError("path lengths must be at least 4")


@dataclass(frozen=True)
class Role:
    kind: str            # rotor-center-u, rotor-center-v, strand-path, gate, enclosing-cycle,
                         # connecting-path, waste, shield
    gadget: str
    color: str = ""      # path colour (yellow, green, magenta, cyan, pink, ...)
    literal: int = 0     # signed literal of the strand, 0 if none
    position: int = -1   # index along the chain

    def to_json(self):
        return {"kind": self.kind, "gadget": self.gadget, "color": self.color,
                "literal": self.literal, "position": self.position}


@dataclass
class GadgetGraph:
    graph: BipartiteGraph
    roles: dict
    provenance: dict
    variant: str
    chains: dict = field(default_factory=dict)   # name -> tuple of vertices (branch to branch)
    meta: dict = field(default_factory=dict)

    def degree_map(self):
        deg = {v: 0 for v in self.graph.vertices}
        for w, b in self.graph.edges:
            deg[w] += 1
            deg[b] += 1
        return deg

    def max_degree(self):
        return max(self.degree_map().values())

    def vertices_of(self, kind):
        return sorted(v for v, r in self.roles.items() if r.kind == kind)


def fit(base, color_a, color_b):
    """Smallest length >= base whose parity joins the two colours."""
    want_odd = color_a != color_b
    n = max(int(base), 1)
    if (n % 2 == 1) != want_odd:
        n += 1
    return n


class _Builder:
    def __init__(self, girth):
        self.girth = girth
        self.color = {}
        self.roles = {}
        self.edges = set()
        self.chains = {}

    def node(self, name, color, role):
        if name in self.color:
            raise CompileError(f"duplicate vertex {name}")
        self.color[name] = color
        self.roles[name] = role
        return name

    def chain(self, name, a, b, base, role, subdividable=True):
        """Path a..b of `base` edges (parity-adjusted); inner vertices get `role`."""
        if subdividable:
            base = max(base, self.girth)
        n = fit(base, self.color[a], self.color[b])
        verts = [a]
        col = self.color[a]
        for k in range(1, n):
            col = "B" if col == "W" else "W"
            v = f"{name}.{k}"
            self.node(v, col, Role(role.kind, role.gadget, role.color, role.literal, k))
            verts.append(v)
        verts.append(b)
        for x, y in zip(verts, verts[1:]):
            self.edge(x, y)
        if name in self.chains:
            raise CompileError(f"duplicate chain {name}")
        self.chains[name] = tuple(verts)
        return verts

    def edge(self, x, y):
        if self.color[x] == self.color[y]:
            raise CompileError(f"edge {x}-{y} joins equal colours")
        self.edges.add((x, y) if self.color[x] == "W" else (y, x))

    def graph(self):
        white = frozenset(v for v, c in self.color.items() if c == "W")
        black = frozenset(v for v, c in self.color.items() if c == "B")
        return BipartiteGraph(white, black, frozenset(self.edges))


# --- strand orientation bookkeeping ---------------------------------------

def clause_handedness(rs, clause):
    """'cw' when the clause's literals 1,2,3 appear clockwise around it in rs."""
    ccw = [e.split(".")[-1] for e in rs.rotation[clause]]
    k = ccw.index("1")
    seq = ccw[k:] + ccw[:k]
    return "cw" if seq == ["1", "3", "2"] else "ccw"


def yellow_choice(left_path, other_path, position, negated, handedness):
    """Which variable-side path must join the clause's yellow path.

    `left_path` is the path seen on the left when looking from the variable
    gadget towards the clause while the variable is TRUE.
    """
    # seen from the clause the left path is on the right
    for yellow in (left_path, other_path):
        yellow_left_from_clause = yellow != left_path
        reads = yellow_left_from_clause if position == 0 else not yellow_left_from_clause
        if handedness == "ccw":
            reads = not reads
        if reads == (not negated):
            return yellow
    raise AssertionError("unreachable")


def pairing(pos_a, pos_b, parity):
    """P/M table for a variable merging two occurrences in same-handed clauses.

    Positions are 1..3; parity is 'even' when both or neither literal is
    negated.  Derived from `yellow_choice`: P joins yellow to yellow.
    """
    if pos_a not in (1, 2, 3) or pos_b not in (1, 2, 3):
        raise ValueError("positions are 1, 2 or 3")
    if parity not in ("even", "odd"):
        raise ValueError("parity is 'even' or 'odd'")
    neg_b = parity == "odd"
    ya = yellow_choice("p", "q", pos_a - 1, False, "cw")
    yb = yellow_choice("q", "p", pos_b - 1, neg_b, "cw")
    return "P" if ya == yb else "M"


# --- the compiler ------------------------------------------------------------

CLAUSE_ORDER = ("s1", "mV", "s2", "s3", "mU")   # clockwise around the rotor (cw-handed clause)


def _cycle_marks(length):
    """Cycle indices of gates and magenta attachments (gates black, even)."""
    def even(x):
        return 2 * round(x / 2)
    g2 = even(length * Fraction(135, 360))
    g3 = g2 + even(length * Fraction(90, 360))
    zv = even(g2 / 2)
    zu = (g3 + length) // 2
    if zu % 2 == 0:
        zu += 1
    return {"g1": 0, "zV": zv, "g2": g2, "g3": g3, "zU": zu}


def _build_clause(b, i, lengths):
    gid = f"C{i}"
    u = b.node(f"{gid}.u", "W", Role("rotor-center-u", gid))
    v = b.node(f"{gid}.v", "B", Role("rotor-center-v", gid))
    b.edge(u, v)
    L = lengths.cycle
    marks = _cycle_marks(L)
    cyc = []
    for k in range(L):
        name = f"{gid}.cyc.{k}"
        kind = "gate" if k in (marks["g1"], marks["g2"], marks["g3"]) else "enclosing-cycle"
        b.node(name, "B" if k % 2 == 0 else "W", Role(kind, gid, "blue", 0, k))
        cyc.append(name)
    for k in range(L):
        b.edge(cyc[k], cyc[(k + 1) % L])
    b.chains[f"{gid}.cycle"] = tuple(cyc) + (cyc[0],)
    red = {}
    for s in (1, 2, 3):
        gate = cyc[marks[f"g{s}"]]
        for col in ("y", "g"):
            r = b.node(f"{gid}.s{s}.{col}.red", "W", Role("strand-path", gid, "red", 0, 0))
            b.edge(r, gate)
            red[(s, col)] = r
            center = u if col == "y" else v
            b.chain(f"{gid}.s{s}.{col}", center, r, lengths.rotor_path,
                    Role("strand-path", gid, "yellow" if col == "y" else "green"))
    b.chain(f"{gid}.mU", u, cyc[marks["zU"]], lengths.rotor_path, Role("connecting-path", gid, "magenta"))
    b.chain(f"{gid}.mV", v, cyc[marks["zV"]], lengths.rotor_path, Role("connecting-path", gid, "magenta"))
    return red, marks


def _vg3(b, gid, seg):
    """Three-occurrence variable gadget.

    Cyan attaches (U, V) and pink (V, U, V, U) to the rotor, making it an
    alternating 6-rotor; a shield loop hangs on pink around its third
    attachment, and the third strand (magenta) attaches (U, V).
    Returns the branch vertex where each outgoing path starts.
    """
    u = b.node(f"{gid}.u", "W", Role("rotor-center-u", gid))
    v = b.node(f"{gid}.v", "B", Role("rotor-center-v", gid))
    b.edge(u, v)
    c1 = b.node(f"{gid}.c1", "B", Role("strand-path", gid, "cyan", 0, 0))
    c2 = b.node(f"{gid}.c2", "W", Role("strand-path", gid, "cyan", 0, 0))
    p = [b.node(f"{gid}.p{k}", col, Role("strand-path", gid, "pink", 0, 0))
         for k, col in zip((1, 2, 3, 4), "WBWB")]
    s1 = b.node(f"{gid}.s1", "B", Role("strand-path", gid, "pink", 0, 0))
    s2 = b.node(f"{gid}.s2", "W", Role("strand-path", gid, "pink", 0, 0))
    for x, center in ((c1, u), (c2, v), (p[0], v), (p[1], u), (p[2], v), (p[3], u)):
        b.edge(x, center)
    b.chain(f"{gid}.cyan.t1", c1, c2, seg, Role("strand-path", gid, "cyan"))
    b.chain(f"{gid}.pink.t1", p[0], p[1], seg, Role("strand-path", gid, "pink"))
    b.chain(f"{gid}.pink.t2a", p[1], s1, seg, Role("strand-path", gid, "pink"))
    b.chain(f"{gid}.pink.t2b", s1, p[2], seg, Role("strand-path", gid, "pink"))
    b.chain(f"{gid}.pink.t3a", p[2], s2, seg, Role("strand-path", gid, "pink"))
    b.chain(f"{gid}.pink.t3b", s2, p[3], seg, Role("strand-path", gid, "pink"))
    b.chain(f"{gid}.shield", s1, s2, 2 * seg, Role("shield", gid, "black"))
    # end -> {path id: start vertex}; 'left' is the path on the left looking outwards when TRUE
    return {
        "W": {"paths": {"cyan": c1, "pink": p[0]}, "left": "pink"},
        "E": {"paths": {"cyan": c2, "pink": p[3]}, "left": "cyan"},
        "M": {"paths": {"mU": u, "mV": v}, "left": "mU"},
    }


def _hphi_gadget(b, gid, seg, slots):
    """Double alternating rotor with six strand slots (clockwise)."""
    u = b.node(f"{gid}.u", "W", Role("rotor-center-u", gid))
    v = b.node(f"{gid}.v", "B", Role("rotor-center-v", gid))
    b.edge(u, v)
    ends = []
    for i in range(6):
        r_to_u = i % 2 == 0
        r = b.node(f"{gid}.r{i + 1}", "B" if r_to_u else "W", Role("strand-path", gid, "cyan", 0, 0))
        l = b.node(f"{gid}.l{i + 1}", "W" if r_to_u else "B", Role("strand-path", gid, "pink", 0, 0))
        b.edge(r, u if r_to_u else v)
        b.edge(l, v if r_to_u else u)
        ends.append({"paths": {f"r{i + 1}": r, f"l{i + 1}": l}, "left": f"r{i + 1}"})
    return ends


class _Compiler:
    def __init__(self, phi, rs, girth, lengths, variant):
        if girth < 4:
            raise CompileError("girth bound must be at least 4")
        self.phi, self.rs, self.lengths, self.variant = phi, rs, lengths, variant
        self.b = _Builder(girth)
        self.pos = tutte_layout(rs)
        self.provenance = {}
        self.meta = {"variant": variant, "clauses": {}, "variables": {}, "strands": {},
                     "layout": {v: [str(x), str(y)] for v, (x, y) in sorted(self.pos.items())},
                     "lengths": vars(lengths).copy()}

    def edge_length(self, e):
        a, c = self.rs.edges[e]
        (x1, y1), (x2, y2) = self.pos[a], self.pos[c]
        return math.hypot(float(x1 - x2), float(y1 - y2))

    def strand_base(self, e):
        return max(2 * self.lengths.segment, math.floor(self.lengths.strand_factor * self.edge_length(e)))

    def run(self):
        b, phi = self.b, self.phi
        red = {}
        for i in range(1, len(phi.clauses) + 1):
            gid = f"C{i}"
            r, marks = _build_clause(b, i, self.lengths)
            red[gid] = r
            self.provenance[gid] = ["clause", i]
            self.meta["clauses"][gid] = {"handedness": clause_handedness(self.rs, gid),
                                         "marks": marks, "literals": list(phi.clauses[i - 1])}
        for var in phi.variables():
            occ = phi.occurrences(var)
            if self.variant == "HPHI":
                self._hphi_variable(var, occ, red)
            elif len(occ) == 2:
                self._vg2(var, occ, red)
            elif len(occ) == 3:
                self._vg3_variable(var, occ, red)
            elif len(occ) == 4:
                self._vg4(var, occ, red)
            else:
                raise UnsupportedOccurrenceCount(var, len(occ))
        graph = b.graph()
        return GadgetGraph(graph, dict(b.roles), self.provenance, self.variant, dict(b.chains), self.meta)

    # ordering of a variable's incidence edges, counterclockwise, starting at the smallest id
    def _ccw_edges(self, var):
        es = list(self.rs.rotation[f"x{var}"])
        k = es.index(min(es))
        return es[k:] + es[:k]

    def _connect(self, gid, end, edge, red):
        """Join a variable-side end to the clause red vertices of incidence edge `edge`."""
        clause, pos = edge.split(".")
        ci, p = int(clause[1:]), int(pos) - 1
        lit = self.phi.clauses[ci - 1][p]
        hand = self.meta["clauses"][clause]["handedness"]
        paths = end["paths"]
        left = end["left"]
        other = next(k for k in paths if k != left)
        yellow = yellow_choice(left, other, p, lit < 0, hand)
        green = other if yellow == left else left
        base = self.strand_base(edge)
        for col, pid in (("y", yellow), ("g", green)):
            name = f"S.{edge}.{col}"
            self.b.chain(name, paths[pid], red[clause][(p + 1, col)], base,
                         Role("strand-path", f"S.{edge}", "yellow" if col == "y" else "green", lit))
        self.meta["strands"][edge] = {"variable_gadget": gid, "yellow": yellow, "green": green,
                                      "left": left, "clause": clause, "position": p + 1}

    def _vg2(self, var, occ, red):
        gid = f"X{var}"
        self.provenance[gid] = ["variable", var]
        ea, eb = self._ccw_edges(var)
        names = {}
        for e, (tag, left) in zip((ea, eb), (("a", "p"), ("b", "q"))):
            clause, pos = e.split(".")
            p = int(pos) - 1
            lit = self.phi.clauses[int(clause[1:]) - 1][p]
            hand = self.meta["clauses"][clause]["handedness"]
            other = "q" if left == "p" else "p"
            names[e] = yellow_choice(left, other, p, lit < 0, hand)
        base = self.strand_base(ea) + self.strand_base(eb)
        for pid in ("p", "q"):
            ends = []
            for e in (ea, eb):
                clause, pos = e.split(".")
                col = "y" if names[e] == pid else "g"
                ends.append(red[clause][(int(pos), col)])
            self.b.chain(f"S.{gid}.{pid}", ends[0], ends[1], base, Role("strand-path", gid, pid, var))
        self.meta["variables"][gid] = {"kind": "vg2", "edges": [ea, eb], "yellow": names}

    def _vg3_variable(self, var, occ, red):
        gid = f"X{var}"
        self.provenance[gid] = ["variable", var]
        e0, e1, e2 = self._ccw_edges(var)
        ends = _vg3(self.b, gid, self.lengths.segment)
        roles = {"W": e0, "E": e1, "M": e2}
        for k, e in roles.items():
            self._connect(gid, ends[k], e, red)
        self.meta["variables"][gid] = {"kind": "vg3", "ends": roles}

    def _vg4(self, var, occ, red):
        gid = f"X{var}"
        self.provenance[gid] = ["variable", var]
        e0, e1, e2, e3 = self._ccw_edges(var)
        a = _vg3(self.b, f"{gid}a", self.lengths.segment)
        c = _vg3(self.b, f"{gid}b", self.lengths.segment)
        self._connect(gid, a["W"], e0, red)
        self._connect(gid, a["E"], e1, red)
        self._connect(gid, c["E"], e2, red)
        self._connect(gid, c["M"], e3, red)
        # looking from a, mU is left when TRUE; seen from b it is on the right,
        # so b's left path (pink) must continue mV
        link = 3 * self.lengths.segment
        self.b.chain(f"{gid}.link.U", a["M"]["paths"]["mU"], c["W"]["paths"]["cyan"], link,
                     Role("strand-path", gid, "magenta", var))
        self.b.chain(f"{gid}.link.V", a["M"]["paths"]["mV"], c["W"]["paths"]["pink"], link,
                     Role("strand-path", gid, "magenta", var))
        self.meta["variables"][gid] = {"kind": "vg4", "ends": {"aW": e0, "aE": e1, "bE": e2, "bM": e3}}

    def _hphi_variable(self, var, occ, red):
        gid = f"X{var}"
        self.provenance[gid] = ["variable", var]
        edges = self._ccw_edges(var)
        n = len(edges)
        if n not in (2, 3, 4):
            raise UnsupportedOccurrenceCount(var, n)
        # slots are clockwise; occupy them so that waste strands sit between incidence strands
        layout = {2: [0, 3], 3: [0, 2, 4], 4: [0, 1, 3, 4]}[n]
        ends = _hphi_gadget(self.b, gid, self.lengths.segment, layout)
        cw_edges = [edges[0]] + edges[:0:-1]
        used = {}
        for slot, e in zip(layout, cw_edges):
            self._connect(gid, ends[slot], e, red)
            used[slot] = e
        waste = [s for s in range(6) if s not in used]
        for s in waste:
            self._waste(gid, s, ends, used)
        self.meta["variables"][gid] = {"kind": "hphi", "slots": {str(k): e for k, e in used.items()},
                                       "waste": waste}

    def _waste(self, gid, slot, ends, used):
        """Waste strand: both paths run out, get joined, and are tied to a neighbouring strand."""
        seg = self.lengths.segment
        b = self.b
        name = f"{gid}.w{slot + 1}"
        paths = ends[slot]["paths"]
        (ra, va), (la, wa) = sorted(paths.items())
        tip = b.node(f"{name}.tip", "B", Role("waste", gid, "gray", 0, 0))
        b.chain(f"{name}.a", va, tip, seg, Role("waste", gid, "gray"))
        b.chain(f"{name}.b", wa, tip, seg, Role("waste", gid, "gray"))
        # tie to the nearest used slot (clockwise neighbour if possible)
        target = min(used, key=lambda s: ((s - slot) % 6, s))
        edge = used[target]
        anchor_chain = self.b.chains[f"S.{edge}.y"]
        anchor = anchor_chain[2] if b.color[anchor_chain[2]] == "W" else anchor_chain[3]
        b.chain(f"{name}.tie", tip, anchor, seg, Role("waste", gid, "gray"))


def compile_gphi(phi, rs, girth=6, lengths=None):
    """Compile into G_Phi (maximum degree 5)."""
    return _Compiler(phi, rs, girth, lengths or LengthConfig(), "GPHI").run()


def compile_hphi(phi, rs, girth=6, lengths=None):
    """Compile into H_Phi (double-rotor variable gadgets, maximum degree 7)."""
    return _Compiler(phi, rs, girth, lengths or LengthConfig(), "HPHI").run()


def girth(graph, roots=None):
    """Length of a shortest cycle (BFS from every root; roots default to all vertices)."""
    adj = graph.adjacency()
    if roots is None:
        roots = sorted(adj, key=str)
    best = math.inf
    for r in roots:
        dist, parent = {r: 0}, {r: None}
        q = deque([r])
        while q:
            x = q.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    q.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def branch_girth(G):
    """Girth computed from branch vertices only (every cycle passes one)."""
    deg = G.degree_map()
    roots = [v for v, d in deg.items() if d >= 3] or None
    return girth(G.graph, roots)


def core_graph(G):
    """Suppress degree-2 vertices: multiset of (branch, branch) adjacencies with chain lengths dropped."""
    adj = G.graph.adjacency()
    branch = {v for v, ns in adj.items() if len(ns) != 2}
    out = []
    seen = set()
    for s in sorted(branch, key=str):
        for n in sorted(adj[s], key=str):
            if (s, n) in seen:
                continue
            prev, cur = s, n
            while cur not in branch:
                nxt = next(x for x in adj[cur] if x != prev)
                prev, cur = cur, nxt
            seen.add((cur, prev))
            out.append(tuple(sorted((s, cur), key=str)))
    return sorted(out)
