"""JSON encoding of every artifact type.

Rationals are written as "p/q" strings (plain "p" for integers), maps keyed
by element ids as lists of pairs, so integer and string ids both survive.
Each document carries a "type" tag.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .geometry import BetaGraph, Embedding, Orientation, Triangle, TriangleFamily
from .lp import DescMode, IntersectionDescription
from .order import BipartiteGraph, LinearExtension, Poset, Realizer, close_transitively
from .reduction.cnf import CnfInstance
from .reduction.gadgets import GadgetGraph, Role
from .reduction.planar import RotationSystem


class DecodeError(ValueError):
    pass


def fr(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def unfr(s):
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise DecodeError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise DecodeError(f"bad rational {s!r}") from exc


def _id(x):
    if isinstance(x, list):
        return tuple(_id(y) for y in x)
    return x


def _out_id(x):
    return list(_out_id(y) for y in x) if isinstance(x, tuple) else x


def _sorted(xs):
    return sorted(xs, key=lambda x: (type(x).__name__, str(x)))


def encode(obj):
    """Plain JSON-compatible structure for an artifact."""
    if isinstance(obj, Poset):
        return {"type": "poset", "elements": [_out_id(x) for x in _sorted(obj.elements)],
                "relations": [[_out_id(x), _out_id(y)] for x, y in _sorted(obj.less_than)]}
    if isinstance(obj, Realizer):
        return {"type": "realizer", "extensions": [[_out_id(x) for x in e.order] for e in obj.extensions]}
    if isinstance(obj, Embedding):
        return {"type": "embedding", "dim": obj.dim,
                "coords": [[_out_id(x), [fr(c) for c in p]] for x, p in _sorted(obj.coords.items())]}
    if isinstance(obj, TriangleFamily):
        return {"type": "family", "level": fr(obj.level),
                "triangles": [[_out_id(x), {"apex": [fr(c) for c in t.apex],
                                            "orientation": t.orientation.value}]
                              for x, t in _sorted(obj.triangles.items())]}
    if isinstance(obj, BipartiteGraph):
        return {"type": "bipartite-graph", "white": [_out_id(x) for x in _sorted(obj.white)],
                "black": [_out_id(x) for x in _sorted(obj.black)],
                "edges": [[_out_id(w), _out_id(b)] for w, b in _sorted(obj.edges)]}
    if isinstance(obj, BetaGraph):
        return {"type": "beta-graph",
                "vertices": [[_out_id(x), [fr(p[0]), fr(p[1])]] for x, p in _sorted(obj.vertices.items())],
                "edges": [[_out_id(a), _out_id(b)] for a, b in _sorted(obj.edges)]}
    if isinstance(obj, IntersectionDescription):
        return {"type": "description", "mode": obj.mode.value,
                "lines": [[r, s] for r, s in _sorted(obj.lines.items())],
                "orders": [[s, [list(g) if isinstance(g, (list, tuple)) else g for g in entries]]
                           for s, entries in _sorted(obj.orders.items())],
                "triangles": [[_out_id(t), list(ids)] for t, ids in _sorted(obj.triangles.items())],
                "distances": [[_out_id(t), fr(d)] for t, d in _sorted(obj.distances.items())]}
    if isinstance(obj, RotationSystem):
        return {"type": "rotation", **obj.to_json()}
    if isinstance(obj, CnfInstance):
        return {"type": "cnf", "num_vars": obj.num_vars, "clauses": [list(c) for c in obj.clauses]}
    if isinstance(obj, GadgetGraph):
        return {"type": "gadget-graph", "variant": obj.variant, "graph": encode(obj.graph),
                "roles": {v: r.to_json() for v, r in sorted(obj.roles.items())},
                "provenance": obj.provenance,
                "chains": {k: list(v) for k, v in sorted(obj.chains.items())},
                "meta": obj.meta}
    if hasattr(obj, "to_json") and type(obj).__name__ == "SchematicDrawing":
        return {"type": "schematic", **obj.to_json()}
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode(data):
    """Inverse of ``encode``; raises DecodeError on malformed input."""
    if not isinstance(data, dict) or "type" not in data:
        raise DecodeError("expected an object with a 'type' field")
    try:
        return _DECODERS[data["type"]](data)
    except KeyError as exc:
        raise DecodeError(f"missing or unknown field {exc}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DecodeError):
            raise
        raise DecodeError(str(exc)) from exc


def _poset(d):
    elements = [_id(x) for x in d["elements"]]
    return close_transitively([(_id(x), _id(y)) for x, y in d["relations"]], elements)


def _family(d):
    tris = {}
    for x, t in d["triangles"]:
        tris[_id(x)] = Triangle(tuple(unfr(c) for c in t["apex"]), unfr(d["level"]),
                                Orientation(t.get("orientation", "down")))
    return TriangleFamily(unfr(d["level"]), tris)


def _description(d):
    # a tie group is a list of line ids; line ids themselves are scalars
    orders = {s: [list(g) if isinstance(g, list) else g for g in entries] for s, entries in d["orders"]}
    return IntersectionDescription(
        {r: int(s) for r, s in d["lines"]}, orders,
        {_id(t): tuple(ids) for t, ids in d.get("triangles", [])},
        DescMode(d.get("mode", "btint")),
        {_id(t): unfr(v) for t, v in d.get("distances", [])})


def _gadget(d):
    roles = {v: Role(**r) for v, r in d["roles"].items()}
    return GadgetGraph(_DECODERS["bipartite-graph"](d["graph"]), roles, d["provenance"], d["variant"],
                       {k: tuple(v) for k, v in d["chains"].items()}, d["meta"])


def _schematic(d):
    from .reduction.witness import SchematicDrawing
    return SchematicDrawing(
        {v: (unfr(x), unfr(y)) for v, (x, y) in d["points"].items()},
        {int(k): v for k, v in d["assignment"].items()},
        {k: tuple(v) for k, v in d["orientations"].items()},
        dict(d["states"]), {k: tuple(v) for k, v in d["ports"].items()},
        d["strands"], d["scale"],
        {k: tuple(unfr(c) for c in v) for k, v in d.get("big", {}).items()})


_DECODERS = {
    "poset": _poset,
    "realizer": lambda d: Realizer(tuple(LinearExtension(tuple(_id(x) for x in e)) for e in d["extensions"])),
    "embedding": lambda d: Embedding(int(d["dim"]), {_id(x): tuple(unfr(c) for c in p) for x, p in d["coords"]}),
    "family": _family,
    "bipartite-graph": lambda d: BipartiteGraph(frozenset(_id(x) for x in d["white"]),
                                                frozenset(_id(x) for x in d["black"]),
                                                frozenset((_id(w), _id(b)) for w, b in d["edges"])),
    "beta-graph": lambda d: BetaGraph({_id(x): (unfr(p[0]), unfr(p[1])) for x, p in d["vertices"]},
                                      frozenset((_id(a), _id(b)) for a, b in d["edges"])),
    "description": _description,
    "rotation": RotationSystem.from_json,
    "cnf": lambda d: CnfInstance(int(d["num_vars"]), tuple(tuple(int(l) for l in c) for c in d["clauses"])),
    "gadget-graph": _gadget,
    "schematic": _schematic,
}


def dumps(obj):
    """Deterministic JSON text."""
    return json.dumps(encode(obj), sort_keys=True, indent=1)


def loads(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DecodeError(f"malformed JSON: {exc}") from exc
    return decode(data)
