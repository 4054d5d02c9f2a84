"""DIMACS CNF input for planar 3-SAT instances with ordered clauses."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


class CnfError(ValueError):
    pass


class DimacsSyntaxError(CnfError):
    pass


class ClauseNot3(CnfError):
    def __init__(self, index, size):
        self.index = index
        super().__init__(f"clause {index} has {size} literals, expected 3")


class OccurrenceBoundExceeded(CnfError):
    def __init__(self, variable, count):
        self.variable = variable
        super().__init__(f"variable {variable} occurs in {count} clauses (at most 4 allowed)")


@dataclass(frozen=True)
class CnfInstance:
    num_vars: int
    clauses: tuple  # ordered tuples of nonzero ints; literal order is significant

    def occurrences(self, var):
        """(clause index, position 0..2, negated) for every occurrence of var."""
        return [(ci, pos, lit < 0) for ci, cl in enumerate(self.clauses)
                for pos, lit in enumerate(cl) if abs(lit) == var]

    def variables(self):
        return sorted({abs(l) for cl in self.clauses for l in cl})

    def satisfied_by(self, assignment):
        return all(any(assignment[abs(l)] == (l > 0) for l in cl) for cl in self.clauses)

    def literal_values(self, assignment, clause_index):
        return tuple(assignment[abs(l)] == (l > 0) for l in self.clauses[clause_index])

    def to_dimacs(self):
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(map(str, cl)) + " 0" for cl in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs_raw(text):
    """(num_vars, clauses) from DIMACS text, without any shape checks."""
    header = None
    clauses, current = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise DimacsSyntaxError(f"line {lineno}: bad problem line")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsSyntaxError(f"line {lineno}: bad problem line") from None
            continue
        if header is None:
            raise DimacsSyntaxError(f"line {lineno}: clause before problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsSyntaxError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                if abs(lit) > header[0]:
                    raise DimacsSyntaxError(f"line {lineno}: variable {abs(lit)} exceeds declared count")
                current.append(lit)
    if header is None:
        raise DimacsSyntaxError("missing problem line")
    if current:
        raise DimacsSyntaxError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise DimacsSyntaxError(f"declared {header[1]} clauses, found {len(clauses)}")
    return header[0], clauses


def parse_dimacs(text):
    num_vars, clauses = parse_dimacs_raw(text)
    for i, cl in enumerate(clauses):
        if len(cl) != 3 or len({abs(l) for l in cl}) != 3:
            raise ClauseNot3(i, len(cl))
    counts = Counter(abs(l) for cl in clauses for l in cl)
    for var, n in sorted(counts.items()):
        if n > 4:
            raise OccurrenceBoundExceeded(var, n)
    return CnfInstance(num_vars, tuple(tuple(cl) for cl in clauses))
