"""Finite posets, linear extensions, realizers and height-2 orders as bipartite graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
import heapq
from itertools import combinations


class OrderError(ValueError):
    pass


class CycleDetected(OrderError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("relation has a directed cycle: " + " < ".join(map(str, self.cycle)))


class EmptyPoset(OrderError):
    pass


class HeightExceeded(OrderError):
    pass


class ElementMismatch(OrderError):
    pass


@dataclass(frozen=True)
class Poset:
    elements: frozenset
    less_than: frozenset  # transitively closed strict relation

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))
        object.__setattr__(self, "less_than", frozenset(tuple(p) for p in self.less_than))
        for x, y in self.less_than:
            if x == y:
                raise OrderError(f"reflexive pair ({x}, {y})")
            if (y, x) in self.less_than:
                raise OrderError(f"antisymmetry violated on ({x}, {y})")
            if x not in self.elements or y not in self.elements:
                raise ElementMismatch(f"pair ({x}, {y}) outside ground set")

    def __len__(self):
        return len(self.elements)

    def lt(self, x, y):
        return (x, y) in self.less_than

    def comparable(self, x, y):
        return x == y or (x, y) in self.less_than or (y, x) in self.less_than

    def sorted_elements(self):
        return sorted(self.elements)

    @cached_property
    def _succ(self):
        succ = {x: set() for x in self.elements}
        for x, y in self.less_than:
            succ[x].add(y)
        return succ

    @cached_property
    def _pred(self):
        pred = {x: set() for x in self.elements}
        for x, y in self.less_than:
            pred[y].add(x)
        return pred

    def upset(self, x):
        """Elements strictly above x."""
        return set(self._succ[x])

    def downset(self, x):
        """Elements strictly below x."""
        return set(self._pred[x])

    def minimal(self):
        return {x for x in self.elements if not self._pred[x]}

    def maximal(self):
        return {x for x in self.elements if not self._succ[x]}

    def covers(self):
        """Cover pairs (Hasse diagram edges), recomputed from the closure."""
        succ = self._succ
        return {(x, y) for x, y in self.less_than
                if not any(y in succ[z] for z in succ[x])}

    def dual(self):
        return Poset(self.elements, frozenset((y, x) for x, y in self.less_than))

    def restrict(self, subset):
        subset = frozenset(subset)
        return Poset(subset, frozenset((x, y) for x, y in self.less_than
                                       if x in subset and y in subset))

    def relabel(self, mapping):
        return Poset(frozenset(mapping[x] for x in self.elements),
                     frozenset((mapping[x], mapping[y]) for x, y in self.less_than))


def close_transitively(pairs, elements=None):
    """Transitive closure of ``pairs``; raises CycleDetected on a directed cycle."""
    pairs = {(x, y) for x, y in pairs}
    if elements is None:
        elements = {x for p in pairs for x in p}
    elements = frozenset(elements)
    for x, y in pairs:
        if x not in elements or y not in elements:
            raise ElementMismatch(f"pair ({x}, {y}) outside ground set")
    succ = {x: set() for x in elements}
    for x, y in pairs:
        if x == y:
            raise CycleDetected([x, x])
        succ[x].add(y)
    _check_acyclic(succ)
    closure = set()
    for x in elements:
        stack = list(succ[x])
        seen = set()
        while stack:
            y = stack.pop()
            if y in seen:
                continue
            seen.add(y)
            stack.extend(succ[y])
        closure.update((x, y) for y in seen)
    return Poset(elements, frozenset(closure))


def _check_acyclic(succ):
    state = {}
    for root in sorted(succ, key=str):
        if root in state:
            continue
        path = [root]
        iters = [iter(sorted(succ[root], key=str))]
        state[root] = 1
        while iters:
            nxt = next(iters[-1], None)
            if nxt is None:
                state[path.pop()] = 2
                iters.pop()
                continue
            if state.get(nxt) == 1:
                raise CycleDetected(path[path.index(nxt):] + [nxt])
            if nxt not in state:
                state[nxt] = 1
                path.append(nxt)
                iters.append(iter(sorted(succ[nxt], key=str)))


def chain(ids):
    ids = list(ids)
    return close_transitively(zip(ids, ids[1:]), ids)


def antichain(ids):
    return Poset(frozenset(ids), frozenset())


def height(P):
    if not P.elements:
        raise EmptyPoset("height of an empty poset")
    longest = {}
    for x in topological_order(P):
        longest[x] = 1 + max((longest[y] for y in P._pred[x]), default=0)
    return max(longest.values())


def has_height_at_most_2(P):
    return not any(P._pred[x] and P._succ[x] for x in P.elements)


def topological_order(P):
    """A linear extension of P, smallest id first among available elements."""
    indeg = {x: len(P._pred[x]) for x in P.elements}
    ready = [x for x, d in indeg.items() if d == 0]
    heapq.heapify(ready)
    out = []
    while ready:
        x = heapq.heappop(ready)
        out.append(x)
        for y in P._succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                heapq.heappush(ready, y)
    return out


def incomparable_pairs(P):
    return {frozenset((x, y)) for x, y in combinations(P.sorted_elements(), 2)
            if not P.comparable(x, y)}


@dataclass(frozen=True)
class LinearExtension:
    order: tuple

    def position(self):
        return {x: i for i, x in enumerate(self.order)}

    def extends(self, P):
        pos = self.position()
        if set(pos) != set(P.elements) or len(self.order) != len(P.elements):
            return False
        return all(pos[x] < pos[y] for x, y in P.less_than)


@dataclass(frozen=True)
class Realizer:
    extensions: tuple

    def __post_init__(self):
        exts = tuple(e if isinstance(e, LinearExtension) else LinearExtension(tuple(e))
                     for e in self.extensions)
        object.__setattr__(self, "extensions", exts)
        if not exts:
            raise OrderError("a realizer needs at least one extension")

    def __len__(self):
        return len(self.extensions)

    def intersection(self):
        """The order defined by 'x before y in every extension'."""
        positions = [e.position() for e in self.extensions]
        elems = self.extensions[0].order
        rel = frozenset((x, y) for x in elems for y in elems
                        if x != y and all(p[x] < p[y] for p in positions))
        return Poset(frozenset(elems), rel)


def is_realizer(P, R):
    for ext in R.extensions:
        if len(ext.order) != len(P.elements) or set(ext.order) != set(P.elements):
            raise ElementMismatch("extension is not a permutation of the ground set")
    if not all(ext.extends(P) for ext in R.extensions):
        return False
    positions = [ext.position() for ext in R.extensions]
    for pair in incomparable_pairs(P):
        x, y = sorted(pair)
        if not (any(p[x] < p[y] for p in positions) and any(p[y] < p[x] for p in positions)):
            return False
    return True


@dataclass(frozen=True)
class BipartiteGraph:
    white: frozenset
    black: frozenset
    edges: frozenset = field(default_factory=frozenset)  # (white, black) tuples

    def __post_init__(self):
        object.__setattr__(self, "white", frozenset(self.white))
        object.__setattr__(self, "black", frozenset(self.black))
        if self.white & self.black:
            raise OrderError("color classes overlap")
        norm = set()
        for a, b in self.edges:
            if a in self.white and b in self.black:
                norm.add((a, b))
            elif b in self.white and a in self.black:
                norm.add((b, a))
            else:
                raise OrderError(f"edge ({a}, {b}) does not join the two classes")
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def vertices(self):
        return self.white | self.black

    def adjacency(self):
        adj = {v: set() for v in self.vertices}
        for w, b in self.edges:
            adj[w].add(b)
            adj[b].add(w)
        return adj

    def degree(self, v):
        return sum(1 for e in self.edges if v in e)

    def has_edge(self, a, b):
        return (a, b) in self.edges or (b, a) in self.edges


def bipartite_to_order(G):
    return Poset(G.white | G.black, frozenset(G.edges))


def order_to_bipartite(P):
    if not has_height_at_most_2(P):
        raise HeightExceeded("order has a 3-element chain")
    black = frozenset(x for x in P.elements if P._pred[x])
    white = P.elements - black
    return BipartiteGraph(white, black, frozenset(P.less_than))
