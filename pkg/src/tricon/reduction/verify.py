"""Exhaustive comparability check of integer apex families against a bipartite graph."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class PointCheck:
    missing: list = field(default_factory=list)     # (white, black) edges not realised
    extra: list = field(default_factory=list)       # comparable pairs that are not edges

    @property
    def ok(self):
        return not self.missing and not self.extra


def black_apexes(white_apex, black_nbrs):
    """Apex of every black: componentwise maximum of its neighbours' apexes."""
    return {b: tuple(int(max(white_apex[w][k] for w in ns)) for k in range(3)) for b, ns in black_nbrs.items()}


def _leq_pairs(A, B, chunk=512):
    """All (i, j) with A[i] <= B[j] componentwise."""
    out_i, out_j = [], []
    for start in range(0, len(A), chunk):
        block = A[start:start + chunk]
        hit = np.all(block[:, None, :] <= B[None, :, :], axis=2)
        i, j = np.nonzero(hit)
        out_i.append(i + start)
        out_j.append(j)
    if not out_i:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.concatenate(out_i), np.concatenate(out_j)


def check_points(white_apex, black_apex, edges, limit=50):
    """Compare the apex order with the graph: every white-black edge is a strict
    containment, and nothing else is comparable.  Works on plain integers."""
    whites = sorted(white_apex)
    blacks = sorted(black_apex)
    W = np.array([white_apex[w] for w in whites], dtype=np.int64)
    B = np.array([black_apex[b] for b in blacks], dtype=np.int64)
    res = PointCheck()
    edge_set = set(edges)
    wi, bj = _leq_pairs(W, B)
    found = {(whites[i], blacks[j]) for i, j in zip(wi.tolist(), bj.tolist())}
    for e in edge_set - found:
        res.missing.append(e)
        if len(res.missing) >= limit:
            break
    for e in found - edge_set:
        res.extra.append(e)
        if len(res.extra) >= limit:
            break
    # equal apexes would make a white and a black coincide
    for e in found & edge_set:
        if white_apex[e[0]] == black_apex[e[1]]:
            res.extra.append(("equal", e))
    for arr, names in ((W, whites), (B, blacks)):
        i, j = _leq_pairs(arr, arr)
        for a, b in zip(i.tolist(), j.tolist()):
            if a != b:
                res.extra.append((names[a], names[b]))
                if len(res.extra) >= 2 * limit:
                    return res
    i, j = _leq_pairs(B, W)
    for a, b in zip(i.tolist(), j.tolist()):
        res.extra.append((blacks[a], whites[b]))
        if len(res.extra) >= 2 * limit:
            break
    return res
