"""Named small posets used throughout the tests and the CLI."""

from __future__ import annotations

from .order import BipartiteGraph, antichain, chain, close_transitively

__all__ = ["antichain", "chain", "chevron", "crown_graph", "cycle_graph", "standard_example"]


def standard_example(n):
    """S_n: minima a_i, maxima b_j, a_i < b_j iff i != j."""
    a = [f"a{i}" for i in range(1, n + 1)]
    b = [f"b{i}" for i in range(1, n + 1)]
    return close_transitively([(a[i], b[j]) for i in range(n) for j in range(n) if i != j], a + b)


def chevron():
    """The six-element chevron: two 3-chains a<d<e, b<c<e plus f above a and b.

    Up to isomorphism and duality it is the only 6-element order of
    dimension 3 besides S_3.
    """
    covers = [("a", "d"), ("d", "e"), ("b", "c"), ("c", "e"), ("a", "f"), ("b", "f")]
    return close_transitively(covers, "abcdef")


def cycle_graph(n):
    """Even cycle C_n as a bipartite graph: w_i adjacent to b_i and b_{i-1}."""
    if n % 2 or n < 4:
        raise ValueError("bipartite cycles need even length >= 4")
    k = n // 2
    w = [f"w{i}" for i in range(k)]
    b = [f"b{i}" for i in range(k)]
    edges = [(w[i], b[i]) for i in range(k)] + [(w[i], b[i - 1]) for i in range(k)]
    return BipartiteGraph(frozenset(w), frozenset(b), frozenset(edges))


def crown_graph(n):
    """Comparability graph of S_n."""
    a = [f"a{i}" for i in range(1, n + 1)]
    b = [f"b{i}" for i in range(1, n + 1)]
    return BipartiteGraph(frozenset(a), frozenset(b),
                          frozenset((a[i], b[j]) for i in range(n) for j in range(n) if i != j))
