"""Command-line interface.

Exit codes: 0 success, 1 a valid negative answer (NO, REJECT, INFEASIBLE,
violations found), 2 bad input.  ``--json`` prints machine-readable JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .geometry import (
    GeometryError,
    RepresentationMismatch,
    beta_graph,
    check_disjoint_paths,
    embedding_to_mixed_family,
    family_from_embedding,
    family_mode,
    family_order,
    realizer_to_embedding,
)
from .lp import DescMode, LpError, verify_description
from .oracle import DimensionTimeout, Status, dimension, dimension_at_most_k
from .order import BipartiteGraph, OrderError, Poset, bipartite_to_order
from .render import RenderError, RenderSpec, render_svg
from .rotor import RotorError, check_claim1, rotor_feasible
from .reduction.cnf import CnfError, parse_dimacs
from .reduction.gadgets import CompileError, compile_gphi, compile_hphi
from .reduction.planar import EmbeddingError, validate_instance
from .reduction.witness import UnsatisfiedClause, VerificationFailed, WitnessUnsupported, schematic_witness, triangle_witness


class InputError(Exception):
    pass


INPUT_ERRORS = (InputError, io.DecodeError, GeometryError, OrderError, LpError, CnfError,
                EmbeddingError, CompileError, RotorError, RenderError, OSError, json.JSONDecodeError)


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load(path, kind):
    obj = io.loads(_read(path))
    if not isinstance(obj, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise InputError(f"{path}: expected {names}, got {type(obj).__name__}")
    return obj


class _Out:
    def __init__(self, args):
        self.json = args.json
        self.out = getattr(args, "output", None)

    def emit(self, text, payload):
        if self.json:
            print(json.dumps(payload, sort_keys=True))
        else:
            print(text)

    def artifact(self, obj, summary):
        text = io.dumps(obj)
        if self.out:
            Path(self.out).write_text(text + "\n")
            self.emit(summary, {"written": self.out, "type": io.encode(obj)["type"]})
        else:
            print(text)


def cmd_dim(args, out):
    P = _load(args.poset, Poset)
    if args.k is not None:
        ans = dimension_at_most_k(P, args.k, args.budget)
        out.emit(ans.status.value, {"k": args.k, "status": ans.status.value})
        return 0 if ans.status is Status.YES else 1
    try:
        d = dimension(P, args.budget)
    except DimensionTimeout:
        out.emit("TIMEOUT", {"status": "TIMEOUT"})
        return 1
    out.emit(str(d), {"dimension": d})
    return 0


def cmd_embed(args, out):
    P = _load(args.poset, Poset)
    d = dimension(P, args.budget)
    R = dimension_at_most_k(P, d, args.budget).witness
    out.artifact(realizer_to_embedding(P, R), f"dimension {d}")
    return 0


def cmd_triangles(args, out):
    from .geometry import Embedding
    E = _load(args.embedding, Embedding)
    level = io.unfr(args.level)
    if args.mixed:
        split = json.loads(_read(args.mixed))
        try:
            lower = [io._id(x) for x in split["lower"]]
            upper = [io._id(x) for x in split["upper"]]
        except (KeyError, TypeError) as exc:
            raise InputError("split file needs 'lower' and 'upper' lists") from exc
        F = embedding_to_mixed_family(E, (lower, upper), level)
    else:
        F = family_from_embedding(E, level)
    out.artifact(F, f"{len(F)} triangles")
    return 0


def cmd_check_rep(args, out):
    from .geometry import TriangleFamily
    F = _load(args.family, TriangleFamily)
    G = _load(args.graph, BipartiteGraph)
    if set(F.triangles) != set(G.vertices):
        out.emit("NO: different vertex sets", {"represents": False, "violations": []})
        return 1
    represents = family_order(F, family_mode(F)) == bipartite_to_order(G)
    violations = []
    if represents:
        try:
            violations = check_disjoint_paths(beta_graph(F, G), G)
        except RepresentationMismatch:
            represents = False
    ok = represents and not violations
    text = "YES" if ok else ("NO: order differs" if not represents else f"NO: {len(violations)} violations")
    out.emit(text, {"represents": represents,
                    "violations": [[list(e), list(f)] for e, f in violations]})
    return 0 if ok else 1


def cmd_rotor_ports(args, out):
    ans = rotor_feasible(args.word)
    payload = {"status": ans.status.value.upper(), "assignments": [list(a.ports) for a in ans.assignments]}
    if ans.certificate is not None:
        payload["certificate"] = {k: v for k, v in vars(ans.certificate).items()}
    text = payload["status"]
    if ans:
        text += "\n" + "\n".join(" ".join(a.names()) for a in ans.assignments)
    out.emit(text, payload)
    return 0 if ans else 1


def cmd_claim1(args, out):
    from .geometry import TriangleFamily
    F = _load(args.family, TriangleFamily)
    ids = [io._id(json.loads(x)) if x[:1] in "[0123456789-" else x for x in args.rotor.split(",")]
    if len(ids) != 8:
        raise InputError("--rotor needs u,v and six attachments")
    missing = [x for x in ids if x not in F.triangles]
    if missing:
        raise InputError(f"unknown ids {missing}")
    rep = check_claim1(F, ids[0], ids[1], ids[2:])
    out.emit(rep.status if rep.ok else "NO: " + "; ".join(rep.violations),
             {"status": rep.status, "violations": rep.violations,
              "covers": {str(k): v for k, v in rep.covers.items()}})
    return 0 if rep.ok else 1


def cmd_compile(args, out):
    from .reduction.planar import RotationSystem
    phi = parse_dimacs(_read(args.cnf))
    rs = _load(args.rotation, RotationSystem)
    validate_instance(phi, rs)
    G = (compile_hphi if args.hphi else compile_gphi)(phi, rs, args.girth)
    out.artifact(G, f"{G.variant}: {len(G.graph.vertices)} vertices, max degree {G.max_degree()}")
    return 0


def _assignment(data):
    if isinstance(data, dict):
        try:
            return {int(k): bool(v) for k, v in data.items()}
        except ValueError as exc:
            raise InputError("assignment keys must be variable numbers") from exc
    if isinstance(data, list) and all(isinstance(l, int) and l for l in data):
        return {abs(l): l > 0 for l in data}
    raise InputError("assignment must map variables to booleans or list signed literals")


def cmd_witness(args, out):
    from .reduction.gadgets import GadgetGraph
    G = _load(args.gadget, GadgetGraph)
    asg = _assignment(json.loads(_read(args.assignment)))
    try:
        S = schematic_witness(G, asg)
        F = triangle_witness(S, G)
    except UnsatisfiedClause as exc:
        out.emit(f"UNSATISFIED clause {exc.index}", {"status": "UNSATISFIED", "clause": exc.index})
        return 1
    except VerificationFailed as exc:
        out.emit(f"REJECT: {exc}", {"status": "REJECT", "reason": str(exc)})
        return 1
    except WitnessUnsupported as exc:
        raise InputError(str(exc)) from exc
    doc = {"type": "witness", "family": io.encode(F), "schematic": io.encode(S)}
    text = json.dumps(doc, sort_keys=True)
    if args.output:
        Path(args.output).write_text(text + "\n")
        out.emit(f"{len(F)} triangles", {"written": args.output, "type": "witness"})
    else:
        print(text)
    return 0


def cmd_verify_lp(args, out):
    from .lp import IntersectionDescription
    D = _load(args.description, IntersectionDescription)
    if args.putcon:
        if not D.distances:
            raise InputError("PUTCON mode needs corner distances in the description")
        D.mode = DescMode.PUTCON
    v = verify_description(D)
    payload = {"verdict": "ACCEPT" if v else "REJECT", "reason": v.reason}
    if v and v.offsets:
        payload["offsets"] = {str(k): io.fr(x) for k, x in sorted(v.offsets.items(), key=lambda kv: str(kv[0]))}
    out.emit(payload["verdict"] + ("" if v else f": {v.reason}"), payload)
    return 0 if v else 1


def cmd_render(args, out):
    data = json.loads(_read(args.artifact))
    if isinstance(data, dict) and data.get("type") == "witness":
        data = data["family"]
    obj = io.decode(data)
    roles, graph = None, None
    if args.gadget:
        from .reduction.gadgets import GadgetGraph
        GG = _load(args.gadget, GadgetGraph)
        roles, graph = GG.roles, GG.graph
    layers = frozenset(args.layers.split(",")) if args.layers else RenderSpec().layers
    spec = RenderSpec(io.unfr(args.scale), layers=layers)
    rotor = tuple(args.rotor.split(",")) if args.rotor else None
    svg = render_svg(obj, spec, roles=roles, rotor=rotor, graph=graph)
    Path(args.output).write_text(svg)
    out.emit(f"wrote {args.output}", {"written": args.output})
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="tricon", description="Containment orders of triangles: tools")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dim", help="order dimension of a poset")
    s.add_argument("poset")
    s.add_argument("--k", type=int)
    s.add_argument("--budget", type=float, default=600.0)
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("embed", help="minimum-dimension embedding into a product of chains")
    s.add_argument("poset")
    s.add_argument("--budget", type=float, default=600.0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("triangles", help="cone triangles of a 3-dimensional embedding")
    s.add_argument("embedding")
    s.add_argument("--level", required=True)
    s.add_argument("--mixed", help="JSON file with 'lower' and 'upper' element lists")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_triangles)

    s = sub.add_parser("check-rep", help="does a family represent a bipartite graph")
    s.add_argument("family")
    s.add_argument("graph")
    s.set_defaults(func=cmd_check_rep)

    s = sub.add_parser("rotor-ports", help="port assignments of a U/V word")
    s.add_argument("word")
    s.set_defaults(func=cmd_rotor_ports)

    s = sub.add_parser("claim1", help="shadow-interval and tip-region bijections of a rotor")
    s.add_argument("family")
    s.add_argument("--rotor", required=True, help="u,v,x1,...,x6")
    s.set_defaults(func=cmd_claim1)

    s = sub.add_parser("compile", help="gadget graph of a planar 3-CNF")
    s.add_argument("cnf", help="DIMACS file")
    s.add_argument("rotation", help="rotation system JSON")
    s.add_argument("--hphi", action="store_true")
    s.add_argument("--girth", type=int, default=6)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("witness", help="verified triangle witness for a satisfying assignment")
    s.add_argument("gadget")
    s.add_argument("assignment")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("verify-lp", help="realizability of a line-arrangement description")
    s.add_argument("description")
    s.add_argument("--putcon", action="store_true")
    s.set_defaults(func=cmd_verify_lp)

    s = sub.add_parser("render", help="SVG of a family, beta-graph or schematic")
    s.add_argument("artifact")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--scale", default="20")
    s.add_argument("--layers", help="comma-separated: triangles,beta-graph,shadow-intervals,tip-regions")
    s.add_argument("--rotor", help="u,v for the overlays")
    s.add_argument("--gadget", help="gadget graph JSON for colours and edges")
    s.set_defaults(func=cmd_render)
    return p


def run_cli(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    out = _Out(args)
    try:
        return args.func(args, out)
    except INPUT_ERRORS as exc:
        msg = f"error: {exc}"
        if args.json:
            print(json.dumps({"error": str(exc), "kind": type(exc).__name__}, sort_keys=True))
        print(msg, file=sys.stderr)
        return 2


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
