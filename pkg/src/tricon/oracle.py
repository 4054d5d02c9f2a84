"""Exact dimension decisions for small posets via a propositional encoding."""

from __future__ import annotations

import enum
import json
import time
from dataclasses import dataclass, field
from itertools import permutations

from . import sat
from .order import LinearExtension, Realizer, incomparable_pairs

DEFAULT_BUDGET = 60.0


@dataclass
class DimCnf:
    k: int
    elements: list
    variables: dict = field(default_factory=dict)  # (i, x, y) -> var id, "x before y in L_i"
    clauses: list = field(default_factory=list)
    order: list = field(default_factory=list)  # branching order

    @property
    def num_vars(self):
        return len(self.variables)

    def to_dimacs(self):
        lines = [f"c dimension <= {self.k} encoding over {len(self.elements)} elements",
                 f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(map(str, cl)) + " 0" for cl in self.clauses]
        return "\n".join(lines) + "\n"

    def variable_map_json(self):
        rows = [{"var": v, "extension": i, "before": x, "after": y}
                for (i, x, y), v in sorted(self.variables.items(), key=lambda kv: kv[1])]
        return json.dumps({"k": self.k, "elements": self.elements, "variables": rows}, indent=1)


def encode_dim_le_k(P, k):
    if k < 1:
        raise ValueError("k must be positive")
    elems = P.sorted_elements()
    cnf = DimCnf(k, elems)
    var = cnf.variables
    for i in range(k):
        for x, y in permutations(elems, 2):
            var[(i, x, y)] = len(var) + 1
    cnf.order = list(range(1, len(var) + 1))
    add = cnf.clauses.append
    for i in range(k):
        for a, x in enumerate(elems):
            for y in elems[a + 1:]:
                add([var[(i, x, y)], var[(i, y, x)]])
                add([-var[(i, x, y)], -var[(i, y, x)]])
        for x, y, z in permutations(elems, 3):
            add([-var[(i, x, y)], -var[(i, y, z)], var[(i, x, z)]])
        for x, y in P.less_than:
            add([var[(i, x, y)]])
    incomparable = sorted(tuple(sorted(p)) for p in incomparable_pairs(P))
    for x, y in incomparable:
        add([var[(i, x, y)] for i in range(k)])
        add([var[(i, y, x)] for i in range(k)])
    if incomparable and k > 1:
        # extensions are interchangeable: let L_1 put the first incomparable pair in id order
        x, y = incomparable[0]
        add([var[(0, x, y)]])
    return cnf


def decode_realizer(cnf, model):
    exts = []
    for i in range(cnf.k):
        before = {x: 0 for x in cnf.elements}
        for (j, x, y), v in cnf.variables.items():
            if j == i and model[v]:
                before[y] += 1
        exts.append(LinearExtension(tuple(sorted(cnf.elements, key=before.__getitem__))))
    return Realizer(tuple(exts))


class Status(str, enum.Enum):
    YES = "YES"
    NO = "NO"
    TIMEOUT = "TIMEOUT"


@dataclass(frozen=True)
class DimAnswer:
    status: Status
    witness: Realizer | None = None

    def __bool__(self):
        return self.status is Status.YES


class DimensionTimeout(Exception):
    pass


def dimension_at_most_k(P, k, budget=DEFAULT_BUDGET):
    cnf = encode_dim_le_k(P, k)
    deadline = None if budget is None else time.monotonic() + budget
    try:
        model = sat.solve(cnf.num_vars, cnf.clauses, cnf.order, deadline)
    except sat.Timeout:
        return DimAnswer(Status.TIMEOUT)
    if model is None:
        return DimAnswer(Status.NO)
    return DimAnswer(Status.YES, decode_realizer(cnf, model))


def dimension(P, budget=DEFAULT_BUDGET):
    """Least k with a realizer of size k; a single element (or none) has dimension 1."""
    k = 1
    deadline = None if budget is None else time.monotonic() + budget
    while True:
        remaining = None if deadline is None else max(deadline - time.monotonic(), 0.0)
        ans = dimension_at_most_k(P, k, remaining)
        if ans.status is Status.YES:
            return k
        if ans.status is Status.TIMEOUT:
            raise DimensionTimeout(f"no decision for k={k} within budget")
        k += 1
