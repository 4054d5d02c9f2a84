"""Stretchability of triangle arrangements by an exact linear program.

A description fixes, for every supporting line, the order in which the other
lines cross it.  Lines are ``y = a*x + b`` with slope ``a`` in {-1, 0, 1} and
unknown offset ``b``.  Each adjacency in an order becomes one linear
inequality in the offsets and a common gap ``c``; the description can be
realized iff the LP ``max c`` has a solution with ``c > 0``.

In the plane model a point ``p`` (with ``sum(p) == level``) is drawn at
``(p2 - p1, -p3)``.  The side ``p3 = k`` is then the line ``y = -k``, the side
``p1 = k`` is ``y = x + 2k - level`` and ``p2 = k`` is ``y = -x + 2k - level``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .geometry import Orientation, Triangle, TriangleFamily, frac

SLOPES = (0, 1, -1)  # slope of the side p3 = k, p1 = k, p2 = k


class LpError(ValueError):
    pass


class ParallelInOrderingList(LpError):
    pass


class SlopeCollisionInTriangle(LpError):
    pass


class DescMode(str, Enum):
    BTINT = "btint"
    PUTCON = "putcon"


@dataclass
class IntersectionDescription:
    """Combinatorial pattern of a set of lines with slopes -1, 0 and 1.

    ``orders[s]`` lists the lines met by ``s`` from left to right.  An entry
    may be a list of lines that cross ``s`` in the same point.
    ``triangles`` maps an element to its three lines, ordered as the sides
    p1 = k, p2 = k, p3 = k.  ``distances`` (PUTCON only) prescribes the signed
    length of each listed triangle's horizontal side.
    """

    lines: dict
    orders: dict
    triangles: dict = field(default_factory=dict)
    mode: DescMode = DescMode.BTINT
    distances: dict = field(default_factory=dict)

    def __post_init__(self):
        self.mode = DescMode(self.mode)
        for s, entries in self.orders.items():
            for group in entries:
                for r in _group(group):
                    if r not in self.lines:
                        raise LpError(f"unknown line {r!r} in order of {s!r}")
                    if self.lines[r] == self.lines[s]:
                        raise ParallelInOrderingList(f"{r!r} is parallel to {s!r}")
        for t, ids in self.triangles.items():
            if len({self.lines[x] for x in ids}) != 3:
                raise SlopeCollisionInTriangle(f"triangle {t!r} repeats a slope")
            if tuple(self.lines[x] for x in ids) != (1, -1, 0):
                raise SlopeCollisionInTriangle(f"triangle {t!r} must list sides p1, p2, p3")
        if self.distances and self.mode is not DescMode.PUTCON:
            raise LpError("corner distances need PUTCON mode")


def _group(entry):
    return tuple(entry) if isinstance(entry, list) else (entry,)


# -- the LP -----------------------------------------------------------------

@dataclass
class Constraint:
    coeffs: dict  # variable -> Fraction
    sense: str  # "<=", ">=" or "=="
    rhs: Fraction = Fraction(0)
    origin: tuple = ()


@dataclass
class RationalLp:
    variables: list
    constraints: list
    objective: dict  # maximized

    def with_constraint(self, con):
        return RationalLp(list(self.variables), self.constraints + [con], dict(self.objective))


GAP = "c"


def _add(d, k, v):
    v = d.get(k, 0) + v
    if v:
        d[k] = v
    else:
        d.pop(k, None)


def _x_numerator(s, r):
    """(b_r - b_s) as a coefficient dict; x(s, r) is this over a_s - a_r."""
    out = {}
    _add(out, r, Fraction(1))
    _add(out, s, Fraction(-1))
    return out


def build_lp(D):
    variables = sorted(D.lines, key=str) + [GAP]
    cons = []
    a = D.lines
    for s, entries in D.orders.items():
        groups = [_group(g) for g in entries]
        for g in groups:
            for r, q in zip(g, g[1:]):
                # x(s,r) == x(s,q), cleared of both (nonzero) denominators
                lhs = {}
                for k, v in _x_numerator(s, r).items():
                    _add(lhs, k, v * (a[s] - a[q]))
                for k, v in _x_numerator(s, q).items():
                    _add(lhs, k, -v * (a[s] - a[r]))
                cons.append(Constraint(lhs, "==", Fraction(0), (s, r, q, "tie")))
        for g, h in zip(groups, groups[1:]):
            r, q = g[0], h[0]
            # x(s,q) - x(s,r) >= gap, multiplied by |(a_s - a_r)(a_s - a_q)|
            sign = 1 if (a[s] - a[r]) * (a[s] - a[q]) > 0 else -1
            lhs = {}
            for k, v in _x_numerator(s, q).items():
                _add(lhs, k, sign * v * (a[s] - a[r]))
            for k, v in _x_numerator(s, r).items():
                _add(lhs, k, -sign * v * (a[s] - a[q]))
            _add(lhs, GAP, Fraction(-1))
            cons.append(Constraint(lhs, ">=", Fraction(0), (s, r, q)))
    for t, value in D.distances.items():
        l1, l2, l3 = D.triangles[t]
        # horizontal side: from its crossing with the slope-1 line to the slope -1 one
        lhs = {}
        for k, v in _x_numerator(l3, l2).items():
            _add(lhs, k, v / (a[l3] - a[l2]))
        for k, v in _x_numerator(l3, l1).items():
            _add(lhs, k, -v / (a[l3] - a[l1]))
        cons.append(Constraint(lhs, "==", frac(value), (t, "distance")))
    return RationalLp(variables, cons, {GAP: Fraction(1)})


# -- exact simplex ----------------------------------------------------------

class LpStatus(str, Enum):
    OPTIMUM = "optimum"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    value: Fraction | None = None
    point: dict | None = None


def _pivot(rows, rhs, basis, obj, r, j):
    row = rows[r]
    piv = row[j]
    if piv != 1:
        for k in row:
            row[k] /= piv
        rhs[r] /= piv
    for i, other in enumerate(rows):
        f = other.get(j) if i != r else None
        if f:
            for k, v in row.items():
                _add(other, k, -f * v)
            rhs[i] -= f * rhs[r]
    f = obj[0].get(j)
    if f:
        for k, v in row.items():
            _add(obj[0], k, -f * v)
        obj[1] -= f * rhs[r]
    basis[r] = j


def _run(rows, rhs, basis, obj, allowed):
    """Bland's rule on a tableau in canonical form; False if unbounded."""
    while True:
        entering = min((k for k, v in obj[0].items() if v < 0 and k in allowed), default=None)
        if entering is None:
            return True
        best = None
        for i, row in enumerate(rows):
            v = row.get(entering, 0)
            if v > 0:
                key = (rhs[i] / v, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        _pivot(rows, rhs, basis, obj, best[1], entering)


def solve_lp(lp):
    """Maximize ``lp.objective`` over free variables, exactly (two-phase, Bland)."""
    col = {}
    for v in lp.variables:
        col[(v, "+")] = len(col)
        col[(v, "-")] = len(col)
    rows, rhs, basis, art = [], [], [], set()
    expanded = []
    for con in lp.constraints:
        if con.sense == "==" and frac(con.rhs) == 0:
            # two slack rows keep the origin feasible
            expanded.append(Constraint(con.coeffs, "<=", Fraction(0)))
            expanded.append(Constraint({k: -v for k, v in con.coeffs.items()}, "<=", Fraction(0)))
        else:
            expanded.append(con)
    for con in expanded:
        row = {}
        for v, a in con.coeffs.items():
            _add(row, col[(v, "+")], frac(a))
            _add(row, col[(v, "-")], -frac(a))
        b, sense = frac(con.rhs), con.sense
        if b == 0 and sense == ">=":  # keep the origin basic: no artificial needed
            row = {k: -v for k, v in row.items()}
            sense = "<="
        if b < 0:
            row = {k: -v for k, v in row.items()}
            b = -b
            sense = {"<=": ">=", ">=": "<="}.get(sense, sense)
        if sense == "<=":
            s = len(col)
            col[("slack", len(rows))] = s
            row[s] = Fraction(1)
            basis.append(s)
        else:
            if sense == ">=":
                s = len(col)
                col[("surplus", len(rows))] = s
                row[s] = Fraction(-1)
            elif sense != "==":
                raise LpError(f"unknown sense {sense!r}")
            s = len(col)
            col[("art", len(rows))] = s
            row[s] = Fraction(1)
            art.add(s)
            basis.append(s)
        rows.append(row)
        rhs.append(b)

    every = set(col.values())
    # phase 1: maximize -sum(artificials)
    obj = [{k: Fraction(1) for k in art}, Fraction(0)]
    for i, bcol in enumerate(basis):
        if bcol in art:
            for k, v in rows[i].items():
                _add(obj[0], k, -v)
            obj[1] -= rhs[i]
    _run(rows, rhs, basis, obj, every)
    if obj[1] < 0:
        return LpResult(LpStatus.INFEASIBLE)
    for i in reversed(range(len(rows))):
        if basis[i] in art:
            j = min((k for k, v in rows[i].items() if v and k not in art), default=None)
            if j is None:
                del rows[i], rhs[i], basis[i]
            else:
                _pivot(rows, rhs, basis, obj, i, j)
    for row in rows:
        for k in art:
            row.pop(k, None)
    allowed = every - art

    obj = [{}, Fraction(0)]
    for v, a in lp.objective.items():
        _add(obj[0], col[(v, "+")], -frac(a))
        _add(obj[0], col[(v, "-")], frac(a))
    for i, bcol in enumerate(basis):
        f = obj[0].get(bcol)
        if f:
            for k, v in rows[i].items():
                _add(obj[0], k, -f * v)
            obj[1] -= f * rhs[i]
    if not _run(rows, rhs, basis, obj, allowed):
        return LpResult(LpStatus.UNBOUNDED)
    values = {bcol: rhs[i] for i, bcol in enumerate(basis)}
    point = {v: values.get(col[(v, "+")], Fraction(0)) - values.get(col[(v, "-")], Fraction(0))
             for v in lp.variables}
    return LpResult(LpStatus.OPTIMUM, obj[1], point)


# -- verification -----------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    accepted: bool
    offsets: dict | None = None
    reason: str = ""

    def __bool__(self):
        return self.accepted


def _satisfies(lp, point):
    for con in lp.constraints:
        lhs = sum(frac(a) * point[v] for v, a in con.coeffs.items())
        b = frac(con.rhs)
        if con.sense == "<=" and lhs > b or con.sense == ">=" and lhs < b or con.sense == "==" and lhs != b:
            return False
    return True


def _rational_point(lp, approx, tol=1e-7):
    """Snap a floating optimum to an exact point: solve the active constraints
    exactly, fixing any leftover freedom at rounded float values."""
    pivots = {}   # variable -> row dict (variable coefficient 1), kept reduced
    for con in lp.constraints:
        lhs = sum(float(a) * approx[v] for v, a in con.coeffs.items())
        if con.sense != "==" and abs(lhs - float(con.rhs)) > tol * (1 + abs(float(con.rhs))):
            continue
        row = {v: frac(a) for v, a in con.coeffs.items() if a}
        row[None] = -frac(con.rhs)
        for v in list(row):
            if v in pivots and v in row:
                f = row.pop(v)
                for k, c in pivots[v].items():
                    if k != v:
                        _add(row, k, -f * c)
        lead = next((v for v in lp.variables if v in row), None)
        if lead is None:
            continue
        f = row[lead]
        row = {k: c / f for k, c in row.items()}
        for other in pivots.values():
            g = other.pop(lead, None)
            if g:
                for k, c in row.items():
                    if k != lead:
                        _add(other, k, -g * c)
        pivots[lead] = row
    point = {v: Fraction(approx[v]).limit_denominator(1000) for v in lp.variables if v not in pivots}
    for v, row in pivots.items():
        point[v] = -sum(c * (point[k] if k is not None else 1) for k, c in row.items() if k != v)
    return point


def _fast_optimum(lp):
    """Floating LP (HiGHS) followed by an exact check; None when inconclusive."""
    import numpy as np
    from scipy.optimize import linprog

    idx = {v: i for i, v in enumerate(lp.variables)}
    ub, bu, eq, be = [], [], [], []
    for con in lp.constraints:
        row = np.zeros(len(idx))
        for v, a in con.coeffs.items():
            row[idx[v]] = float(a)
        b = float(con.rhs)
        if con.sense == "<=":
            ub.append(row), bu.append(b)
        elif con.sense == ">=":
            ub.append(-row), bu.append(-b)
        else:
            eq.append(row), be.append(b)
    cost = np.zeros(len(idx))
    for v, a in lp.objective.items():
        cost[idx[v]] = -float(a)
    res = linprog(cost, A_ub=np.array(ub) if ub else None, b_ub=bu or None,
                  A_eq=np.array(eq) if eq else None, b_eq=be or None,
                  bounds=[(None, None)] * len(idx), method="highs")
    if res.status != 0 or -res.fun <= 1e-9:
        return None
    point = _rational_point(lp, dict(zip(lp.variables, res.x.tolist())))
    if point[GAP] <= 0 or not _satisfies(lp, point):
        return None
    return point


def verify_description(D):
    """ACCEPT with exact line offsets iff the pattern is stretchable.

    A floating LP proposes a point that is re-derived and checked in exact
    arithmetic; rejections and inconclusive cases go through the exact simplex.
    """
    lp = build_lp(D).with_constraint(Constraint({GAP: Fraction(1)}, "<=", Fraction(1), ("normalize",)))
    point = _fast_optimum(lp)
    if point is not None:
        return Verdict(True, {k: v for k, v in point.items() if k != GAP})
    res = solve_lp(lp)
    if res.status is LpStatus.INFEASIBLE:
        return Verdict(False, reason="the constraints are infeasible")
    if res.status is LpStatus.UNBOUNDED:  # cannot happen once c <= 1, kept for totality
        return Verdict(False, reason="unbounded after normalization")
    if res.value <= 0:
        return Verdict(False, reason=f"best gap is {res.value}, not positive")
    return Verdict(True, {k: v for k, v in res.point.items() if k != GAP})


def line_id(t, side):
    return f"{t}.p{side}"


def family_lines(F):
    """Lines of every triangle side as ``{line id: (slope, offset)}``."""
    out = {}
    for t, tri in F.triangles.items():
        k1, k2, k3 = tri.apex
        out[line_id(t, 1)] = (1, 2 * k1 - F.level)
        out[line_id(t, 2)] = (-1, 2 * k2 - F.level)
        out[line_id(t, 3)] = (0, -k3)
    return out


def crossing_x(lines, s, r):
    (a_s, b_s), (a_r, b_r) = lines[s], lines[r]
    return Fraction(b_r - b_s) / (a_s - a_r)


def arrangement_orders(lines):
    """For each line, the crossings with all other lines grouped and sorted by x."""
    orders = {}
    for s, (a_s, _) in lines.items():
        xs = {}
        for r, (a_r, _) in lines.items():
            if a_r != a_s:
                xs.setdefault(crossing_x(lines, s, r), []).append(r)
        entries = []
        for x in sorted(xs):
            group = sorted(xs[x], key=str)
            entries.append(group if len(group) > 1 else group[0])
        orders[s] = entries
    return orders


def description_from_family(F, mode=DescMode.BTINT, distances=None):
    """Read off the full crossing pattern of a family's supporting lines."""
    lines = family_lines(F)
    D = IntersectionDescription(
        {k: v[0] for k, v in lines.items()},
        arrangement_orders(lines),
        {t: tuple(line_id(t, i) for i in (1, 2, 3)) for t in F.triangles},
        DescMode(mode),
        {},
    )
    if DescMode(mode) is DescMode.PUTCON:
        if distances is None:
            distances = {t: side_width(F, t) for t in F.triangles}
        D.distances = dict(distances)
    return D


def side_width(F, t):
    """Signed horizontal side length of triangle ``t`` in the drawing chart."""
    lines = family_lines(F)
    s, l1, l2 = line_id(t, 3), line_id(t, 1), line_id(t, 2)
    return crossing_x(lines, s, l2) - crossing_x(lines, s, l1)


def family_from_offsets(D, offsets, level=0):
    """Rebuild triangles from line offsets (inverse of :func:`family_lines`)."""
    level = frac(level)
    tris = {}
    for t, (l1, l2, l3) in D.triangles.items():
        apex = ((offsets[l1] + level) / 2, (offsets[l2] + level) / 2, -offsets[l3])
        orient = Orientation.DOWN if sum(apex) >= level else Orientation.UP
        tris[t] = Triangle(apex, level, orient)
    return TriangleFamily(level, tris)


def orders_of_offsets(D, offsets):
    lines = {k: (a, offsets[k]) for k, a in D.lines.items()}
    return arrangement_orders(lines)


def same_pattern(D, offsets):
    """True iff the realized lines cross exactly as ``D`` prescribes."""
    realized = orders_of_offsets(D, offsets)
    want = {s: [_canon(g) for g in entries] for s, entries in D.orders.items()}
    have = {s: [_canon(g) for g in entries] for s, entries in realized.items() if s in want}
    return want == have


def _canon(entry):
    g = _group(entry)
    return tuple(sorted(g, key=str))
