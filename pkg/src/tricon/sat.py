"""A small complete CDCL solver (watched literals, 1-UIP learning, restarts).

Literals are nonzero ints in DIMACS style.  The initial branching order is
the caller's variable order; activities then take over as conflicts are
learned.  Deterministic for a given input.
"""

from __future__ import annotations

import heapq
import time


class Timeout(Exception):
    pass


def solve(num_vars, clauses, order=None, deadline=None):
    """Return a model (dict var -> bool) or None if unsatisfiable.

    Raises Timeout once ``time.monotonic()`` passes ``deadline``.
    """
    return _Cdcl(num_vars, clauses, order, deadline).run()


def _luby(i):
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while True:
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i:
            k += 1


class _Cdcl:
    def __init__(self, num_vars, clauses, order, deadline):
        n = num_vars
        self.n = n
        self.deadline = deadline
        self.value = [0] * (n + 1)
        self.level = [0] * (n + 1)
        self.reason = [None] * (n + 1)
        self.phase = [-1] * (n + 1)
        self.trail = []
        self.trail_lim = []
        self.watches = {}
        self.clauses = []
        self.units = []
        self.empty = False
        order = list(order) if order is not None else list(range(1, n + 1))
        # earlier variables in the caller's order start slightly more active
        self.activity = [0.0] * (n + 1)
        for rank, v in enumerate(order):
            self.activity[v] = (len(order) - rank) * 1e-6
        self.inc = 1.0
        self.heap = [(-self.activity[v], v) for v in range(1, n + 1)]
        heapq.heapify(self.heap)
        for cl in clauses:
            cl = list(dict.fromkeys(cl))
            if any(-lit in cl for lit in cl):
                continue
            if not cl:
                self.empty = True
            elif len(cl) == 1:
                self.units.append(cl[0])
            else:
                self._attach(cl)

    def _attach(self, cl):
        idx = len(self.clauses)
        self.clauses.append(cl)
        self.watches.setdefault(cl[0], []).append(idx)
        self.watches.setdefault(cl[1], []).append(idx)
        return idx

    def lit_value(self, lit):
        v = self.value[abs(lit)]
        return v if lit > 0 else -v

    def assign(self, lit, reason):
        var = abs(lit)
        self.value[var] = 1 if lit > 0 else -1
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason
        self.trail.append(lit)

    def propagate(self):
        """Returns the index of a conflicting clause, or None."""
        while self.qhead < len(self.trail):
            false_lit = -self.trail[self.qhead]
            self.qhead += 1
            watching = self.watches.get(false_lit)
            if not watching:
                continue
            keep = []
            conflict = None
            for j, idx in enumerate(watching):
                if conflict is not None:
                    keep.append(idx)
                    continue
                cl = self.clauses[idx]
                if cl[0] == false_lit:
                    cl[0], cl[1] = cl[1], cl[0]
                if self.lit_value(cl[0]) == 1:
                    keep.append(idx)
                    continue
                for k in range(2, len(cl)):
                    if self.lit_value(cl[k]) != -1:
                        cl[1], cl[k] = cl[k], cl[1]
                        self.watches.setdefault(cl[1], []).append(idx)
                        break
                else:
                    keep.append(idx)
                    other = self.lit_value(cl[0])
                    if other == -1:
                        conflict = idx
                    elif other == 0:
                        self.assign(cl[0], idx)
            self.watches[false_lit] = keep
            if conflict is not None:
                return conflict
        return None

    def bump(self, var):
        self.activity[var] += self.inc
        if self.activity[var] > 1e100:
            for v in range(1, self.n + 1):
                self.activity[v] *= 1e-100
            self.inc *= 1e-100
            self.heap = [(-self.activity[v], v) for v in range(1, self.n + 1) if self.value[v] == 0]
            heapq.heapify(self.heap)
        if self.value[var] == 0:
            heapq.heappush(self.heap, (-self.activity[var], var))

    def analyze(self, confl):
        seen = set()
        learnt = [0]
        counter = 0
        lit = None
        idx = len(self.trail) - 1
        cur = len(self.trail_lim)
        clause = self.clauses[confl]
        while True:
            for q in clause:
                if lit is not None and q == lit:
                    continue
                v = abs(q)
                if v in seen or self.level[v] == 0:
                    continue
                seen.add(v)
                self.bump(v)
                if self.level[v] == cur:
                    counter += 1
                else:
                    learnt.append(q)
            while abs(self.trail[idx]) not in seen:
                idx -= 1
            lit = self.trail[idx]
            idx -= 1
            counter -= 1
            if counter == 0:
                break
            clause = self.clauses[self.reason[abs(lit)]]
        learnt[0] = -lit
        if len(learnt) == 1:
            back = 0
        else:
            best = max(range(1, len(learnt)), key=lambda i: self.level[abs(learnt[i])])
            learnt[1], learnt[best] = learnt[best], learnt[1]
            back = self.level[abs(learnt[1])]
        self.inc *= 1.05
        return learnt, back

    def backtrack(self, lvl):
        if len(self.trail_lim) <= lvl:
            return
        mark = self.trail_lim[lvl]
        for lit in self.trail[mark:]:
            v = abs(lit)
            self.phase[v] = 1 if lit > 0 else -1
            self.value[v] = 0
            self.reason[v] = None
            heapq.heappush(self.heap, (-self.activity[v], v))
        del self.trail[mark:]
        del self.trail_lim[lvl:]
        self.qhead = min(self.qhead, mark)

    def pick(self):
        while self.heap:
            _, v = heapq.heappop(self.heap)
            if self.value[v] == 0:
                return v
        return None

    def run(self):
        self.qhead = 0
        if self.empty:
            return None
        for lit in self.units:
            val = self.lit_value(lit)
            if val == -1:
                return None
            if val == 0:
                self.assign(lit, None)
        if self.propagate() is not None:
            return None
        conflicts = 0
        restart_no = 1
        limit = 100 * _luby(restart_no)
        while True:
            confl = self.propagate()
            if confl is not None:
                conflicts += 1
                if conflicts % 64 == 0 and self.deadline is not None and time.monotonic() > self.deadline:
                    raise Timeout()
                if not self.trail_lim:
                    return None
                learnt, back = self.analyze(confl)
                self.backtrack(back)
                if len(learnt) == 1:
                    self.assign(learnt[0], None)
                else:
                    self.assign(learnt[0], self._attach(learnt))
                if conflicts >= limit:
                    restart_no += 1
                    limit = conflicts + 100 * _luby(restart_no)
                    self.backtrack(0)
                continue
            var = self.pick()
            if var is None:
                return {v: self.value[v] == 1 for v in range(1, self.n + 1)}
            if self.deadline is not None and len(self.trail) % 128 == 0 and time.monotonic() > self.deadline:
                raise Timeout()
            self.trail_lim.append(len(self.trail))
            self.assign(var * self.phase[var], None)
