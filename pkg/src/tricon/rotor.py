"""Rotors: which paths can leave a nested pair of triangles through which port.

A rotor is a white center ``u`` nested inside a black center ``v`` with paths
leaving both.  Around the pair there are six ports in cyclic order
S1, T1, S2, T2, S3, T3.  An S-port is the part of a side of T_v cut out by
T_u's supporting lines (a *shadow interval*); a black triangle containing T_u
must cover one of them.  A T-port is the parallelogram at a corner of T_v
beyond those lines (a *tip region*); a white triangle inside T_v must meet one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .geometry import Orientation, Triangle, TriangleFamily, frac
from .order import BipartiteGraph

PORTS = ("S1", "T1", "S2", "T2", "S3", "T3")


class RotorError(ValueError):
    pass


class NotARotorRepresentation(RotorError):
    pass


@dataclass(frozen=True)
class RotorSignature:
    """Cyclic word over U/V: the i-th path leads to center u (U) or v (V)."""

    sequence: str

    def __post_init__(self):
        seq = self.sequence.upper()
        if not seq or set(seq) - {"U", "V"}:
            raise RotorError(f"signature must be a non-empty word over U/V, got {self.sequence!r}")
        object.__setattr__(self, "sequence", seq)

    def __len__(self):
        return len(self.sequence)

    def rotate(self, k):
        k %= len(self.sequence)
        return RotorSignature(self.sequence[k:] + self.sequence[:k])

    def runs(self):
        """Maximal cyclic blocks of equal letters as lists of path indices."""
        seq, n = self.sequence, len(self.sequence)
        if len(set(seq)) == 1:
            return [list(range(n))]
        start = next(i for i in range(n) if seq[i] != seq[i - 1])
        out, cur = [], [start]
        for step in range(1, n):
            i = (start + step) % n
            if seq[i] == seq[cur[-1]]:
                cur.append(i)
            else:
                out.append(cur)
                cur = [i]
        out.append(cur)
        return out


@dataclass(frozen=True)
class PortAssignment:
    ports: tuple  # ports[i] is the port index (0..5) used by path i

    def names(self):
        return tuple(PORTS[p] for p in self.ports)


def _is_valid(sig, ports):
    n = len(ports)
    for p, t in zip(ports, sig):
        if (p % 2 == 0) != (t == "U"):
            return False
    descents = sum(1 for i in range(n) if ports[(i + 1) % n] < ports[i])
    if descents > 1 or (descents == 0 and len(set(ports)) > 1):
        return False
    # two paths on one port: the block between them must not contain the other type
    for i in range(n):
        for j in range(i + 1, n):
            if ports[i] != ports[j]:
                continue
            arcs = (range(i + 1, j), [k % n for k in range(j + 1, i + n)])
            if not any(all(ports[k] == ports[i] for k in arc) for arc in arcs):
                return False
    return True


def port_assignments(sig):
    """All valid port assignments, by exhaustive search over monotone maps."""
    if isinstance(sig, str):
        sig = RotorSignature(sig)
    word, n = sig.sequence, len(sig)
    found = []

    def extend(prefix, descents):
        if len(prefix) == n:
            if _is_valid(word, prefix):
                found.append(PortAssignment(tuple(prefix)))
            return
        want = 0 if word[len(prefix)] == "U" else 1
        for p in range(want, 6, 2):
            d = descents + (1 if prefix and p < prefix[-1] else 0)
            if d <= 1:
                extend(prefix + [p], d)

    extend([], 0)
    return found


@dataclass(frozen=True)
class Conflict:
    """Pigeonhole certificate: four blocks of one type compete for three ports.

    ``representatives`` holds one path from each block.  Whatever the
    assignment, two of them share a port, and between any two of them lies a
    path of the other type (listed in ``separators``).
    """

    path_type: str
    representatives: tuple
    separators: tuple


class Feasibility(str, Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class RotorAnswer:
    status: Feasibility
    assignments: tuple = ()
    certificate: Conflict | None = None

    def __bool__(self):
        return self.status is Feasibility.FEASIBLE


def _certificate(sig):
    runs = sig.runs()
    word = sig.sequence
    u_runs = [r for r in runs if word[r[0]] == "U"]
    v_runs = [r for r in runs if word[r[0]] == "V"]
    mine, other = (u_runs, v_runs) if len(u_runs) > 3 else (v_runs, u_runs)
    if len(mine) <= 3:
        return None
    reps = tuple(r[0] for r in mine[:4])
    return Conflict(word[reps[0]], reps, tuple(r[0] for r in other[:4]))


def rotor_feasible(sig):
    if isinstance(sig, str):
        sig = RotorSignature(sig)
    found = port_assignments(sig)
    if found:
        return RotorAnswer(Feasibility.FEASIBLE, tuple(found))
    cert = _certificate(sig)
    assert cert is not None, f"no assignment for {sig.sequence} but no pigeonhole conflict"
    return RotorAnswer(Feasibility.INFEASIBLE, (), cert)


def clause_signature(o1, o2, o3):
    """The 8-path word around a clause rotor, read clockwise.

    Each incidence strand contributes its u-path and v-path as a pair.  The
    first literal is true when its u-path comes first, the other two when the
    v-path comes first.  The v-connector sits between strands 1 and 2, the
    u-connector between strand 3 and strand 1.
    """
    s1 = "UV" if o1 else "VU"
    s2 = "VU" if o2 else "UV"
    s3 = "VU" if o3 else "UV"
    return RotorSignature(s1 + "V" + s2 + s3 + "U")


def clause_feasible(o1, o2, o3):
    return bool(rotor_feasible(clause_signature(o1, o2, o3)))


# -- geometric check --------------------------------------------------------

def _down(F, x):
    t = F.triangles[x]
    if t.orientation is not Orientation.DOWN:
        raise NotARotorRepresentation(f"{x} is not a DOWN triangle")
    return t.apex


def _leq(a, b):
    return all(x <= y for x, y in zip(a, b))


def shadow_intervals(F, u, v):
    """Endpoints of the three shadow intervals, indexed by side k (p_k = apex(v)_k)."""
    a, A, c = _down(F, u), _down(F, v), F.level
    out = []
    for k in range(3):
        i, j = [m for m in range(3) if m != k]
        ends = []
        for fixed, free in ((i, j), (j, i)):
            p = [None] * 3
            p[k], p[fixed] = A[k], a[fixed]
            p[free] = c - A[k] - a[fixed]
            ends.append(tuple(p))
        out.append(tuple(ends))
    return out


def tip_regions(F, u, v):
    """Corners of the three tip parallelograms, indexed by the corner k of T_v."""
    a, A, c = _down(F, u), _down(F, v), F.level
    out = []
    for k in range(3):
        i, j = [m for m in range(3) if m != k]

        def pt(pi, pj):
            p = [None] * 3
            p[i], p[j], p[k] = pi, pj, c - pi - pj
            return tuple(p)

        out.append((pt(A[i], A[j]), pt(a[i], A[j]), pt(a[i], a[j]), pt(A[i], a[j])))
    return out


@dataclass
class Claim1Report:
    status: str  # "ok", "violation" or "degenerate-center"
    shadow_owner: dict = field(default_factory=dict)  # side k -> list of odd attachments covering it
    tip_owner: dict = field(default_factory=dict)  # corner k -> list of even attachments meeting it
    covers: dict = field(default_factory=dict)  # attachment -> sides / corners it uses
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return self.status == "ok"


def check_claim1(F, u, v, attachments):
    """Check the shadow-interval and tip-region bijections around rotor (u, v).

    ``attachments`` lists x1..x6 in cyclic order; odd positions are neighbours
    of u (they contain T_u), even ones neighbours of v (inside T_v).
    """
    a, A = _down(F, u), _down(F, v)
    if not _leq(a, A) or a == A:
        raise NotARotorRepresentation("T_u must lie strictly inside T_v")
    if len(attachments) != 6:
        raise NotARotorRepresentation("a 6-rotor has exactly six attachments")
    odd, even = attachments[0::2], attachments[1::2]
    for x in odd:
        X = _down(F, x)
        if not _leq(a, X) or _leq(X, A):
            raise NotARotorRepresentation(f"{x} must contain T_u and leave T_v")
    for x in even:
        X = _down(F, x)
        if not _leq(X, A) or _leq(a, X) or _leq(X, a):
            raise NotARotorRepresentation(f"{x} must lie in T_v and avoid T_u")

    report = Claim1Report("ok")
    if sum(a) == F.level:
        report.status = "degenerate-center"
        report.violations.append("T_u is a point, its shadow intervals collapse")
        return report

    for k in range(3):
        report.shadow_owner[k] = [x for x in odd if _down(F, x)[k] >= A[k]]
        i, j = [m for m in range(3) if m != k]
        report.tip_owner[k] = [x for x in even
                               if _down(F, x)[i] >= a[i] and _down(F, x)[j] >= a[j]]
    for x in odd:
        report.covers[x] = [k for k in range(3) if x in report.shadow_owner[k]]
    for x in even:
        report.covers[x] = [k for k in range(3) if x in report.tip_owner[k]]

    for k in range(3):
        for kind, owner in (("shadow interval", report.shadow_owner), ("tip region", report.tip_owner)):
            if len(owner[k]) != 1:
                report.violations.append(f"{kind} {k + 1} is used by {len(owner[k])} triangles")
    for x, ks in report.covers.items():
        if len(ks) != 1:
            report.violations.append(f"{x} uses {len(ks)} ports")
    if report.violations:
        report.status = "violation"
    return report


# -- template ---------------------------------------------------------------

def alternating_rotor_graph(tail=1):
    """Isolated 6-rotor: u-v edge plus six paths of ``tail`` + 1 vertices."""
    white, black, edges = {"u"}, {"v"}, {("u", "v")}
    for i in range(1, 7):
        prev = "u" if i % 2 else "v"
        for step in range(tail + 1):
            name = f"x{i}" if step == 0 else f"x{i}_{step}"
            (black if (prev == "u" or prev in white) else white).add(name)
            edges.add((prev, name) if prev in white else (name, prev))
            prev = name
    return BipartiteGraph(frozenset(white), frozenset(black), frozenset(edges))


def alternating_rotor_family(tail=1):
    """Containment representation of :func:`alternating_rotor_graph`.

    T_v has apex 0 at level -12 and T_u is the concentric triangle with apex
    (-2,-2,-2).  Odd attachments stick out through one side each, even ones sit
    in one corner each.  Tails run straight outwards: white tail vertices are
    tiny triangles on a ray, black ones the smallest triangle holding their two
    white neighbours.
    """
    c = Fraction(-12)
    delta = Fraction(1, 4)
    tri = {"v": (0, 0, 0), "u": (-2, -2, -2)}
    for idx in range(3):
        side = tuple(-2 + 3 * (m == idx) for m in range(3))
        corner = tuple(-1 - 8 * (m == (idx + 2) % 3) for m in range(3))
        tri[f"x{2 * idx + 1}"] = side
        tri[f"x{2 * idx + 2}"] = corner
    for i in range(1, 7):
        idx = (i - 1) // 2
        if i % 2:
            # ray leaving through side idx, starting just outside T_v
            d = tuple(3 * (m == idx) - 1 for m in range(3))
            q0 = tuple(Fraction(1, 2) if m == idx else (c - Fraction(1, 2)) / 2 for m in range(3))
        else:
            m0 = (idx + 2) % 3
            d = tuple(1 - 3 * (m == m0) for m in range(3))
            q0 = tuple((c if m == m0 else 0) + d[m] for m in range(3))
        rays = iter([tuple(q0[m] + 3 * t * d[m] for m in range(3)) for t in range(tail + 1)])
        last_white = None if i % 2 else tri[f"x{i}"]
        for step in range(1, tail + 1):
            name = f"x{i}_{step}"
            if (step + i) % 2 == 0:  # white: next point on the ray
                last_white = next(rays)
                tri[name] = tuple(x + delta / 4 for x in last_white)
            else:  # black: covers the previous white and the next ray point
                nxt = next(rays)
                tri[name] = tuple(max(a, b) + delta for a, b in zip(last_white, nxt))
                rays = _prepend(nxt, rays)
    return TriangleFamily(c, {k: Triangle(tuple(frac(x) for x in ap), c) for k, ap in tri.items()})


def _prepend(first, rest):
    yield first
    yield from rest
