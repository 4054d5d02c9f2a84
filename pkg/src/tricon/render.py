"""Static SVG pictures of triangle families, beta-graphs and schematic drawings."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from xml.sax.saxutils import quoteattr

from .geometry import BetaGraph, TriangleFamily, display_xy

DEFAULT_PALETTE = {
    "yellow": "#d4a800", "green": "#2e8b3a", "magenta": "#c2188f", "cyan": "#0aa3c2",
    "pink": "#f07aa8", "blue": "#3050c8", "red": "#d02020", "black": "#202020",
    "gray": "#909090", "default": "#404040",
}
LAYERS = frozenset({"triangles", "beta-graph", "shadow-intervals", "tip-regions"})


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class RenderSpec:
    scale: Fraction = Fraction(20)
    palette: dict = field(default_factory=lambda: dict(DEFAULT_PALETTE))
    layers: frozenset = frozenset({"triangles", "beta-graph"})

    def __post_init__(self):
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale <= 0:
            raise RenderError("scale must be positive")
        object.__setattr__(self, "layers", frozenset(self.layers))
        if not self.layers <= LAYERS:
            raise RenderError(f"unknown layers {sorted(self.layers - LAYERS)}")

    def color(self, role):
        key = getattr(role, "color", None) or "default"
        return self.palette.get(key, self.palette.get("default", "#404040"))


def _num(v):
    return f"{v:.3f}".rstrip("0").rstrip(".")


class _Canvas:
    def __init__(self, spec):
        self.spec = spec
        self.items = []
        self.xs, self.ys = [], []

    def pt(self, xy):
        s = float(self.spec.scale)
        x, y = xy[0] * s, -xy[1] * s
        self.xs.append(x)
        self.ys.append(y)
        return x, y

    def polygon(self, pts, color, ident, fill="none"):
        coords = " ".join(f"{_num(x)},{_num(y)}" for x, y in (self.pt(p) for p in pts))
        self.items.append(f'<polygon id={quoteattr(str(ident))} points="{coords}" fill="{fill}" '
                          f'stroke="{color}" stroke-width="1"/>')

    def line(self, a, b, color, ident, width=1):
        (x1, y1), (x2, y2) = self.pt(a), self.pt(b)
        self.items.append(f'<line id={quoteattr(str(ident))} x1="{_num(x1)}" y1="{_num(y1)}" '
                          f'x2="{_num(x2)}" y2="{_num(y2)}" stroke="{color}" stroke-width="{width}"/>')

    def circle(self, c, r, color, ident):
        x, y = self.pt(c)
        self.items.append(f'<circle id={quoteattr(str(ident))} cx="{_num(x)}" cy="{_num(y)}" '
                          f'r="{_num(r)}" fill="{color}"/>')

    def document(self):
        if self.xs:
            x0, x1, y0, y1 = min(self.xs), max(self.xs), min(self.ys), max(self.ys)
        else:
            x0 = x1 = y0 = y1 = 0.0
        pad = 10.0
        w, h = x1 - x0 + 2 * pad, y1 - y0 + 2 * pad
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_num(x0 - pad)} {_num(y0 - pad)} '
                f'{_num(w)} {_num(h)}" width="{_num(w)}" height="{_num(h)}">')
        return "\n".join([head] + self.items + ["</svg>"]) + "\n"


def _key(x):
    return (type(x).__name__, str(x))


def render_svg(obj, spec=RenderSpec(), roles=None, rotor=None, graph=None):
    """SVG text for a family, beta-graph or schematic drawing.

    ``roles`` maps vertices to objects with a ``color`` attribute; ``rotor``
    (u, v) enables the shadow-interval and tip-region overlays of a family;
    ``graph`` supplies edges when drawing a schematic.
    """
    roles = roles or {}
    cv = _Canvas(spec)
    if isinstance(obj, TriangleFamily):
        if "triangles" in spec.layers:
            for x, t in sorted(obj.triangles.items(), key=lambda kv: _key(kv[0])):
                corners = [display_xy(c) for c in t.corners()]
                if t.is_point:
                    cv.circle(corners[0], 1.5, spec.color(roles.get(x)), x)
                else:
                    cv.polygon(corners, spec.color(roles.get(x)), x)
        if rotor is not None:
            from .rotor import shadow_intervals, tip_regions
            u, v = rotor
            if "shadow-intervals" in spec.layers:
                for k, (a, b) in enumerate(shadow_intervals(obj, u, v)):
                    cv.line(display_xy(a), display_xy(b), spec.palette.get("red", "red"), f"shadow{k + 1}", 3)
            if "tip-regions" in spec.layers:
                for k, quad in enumerate(tip_regions(obj, u, v)):
                    cv.polygon([display_xy(p) for p in quad], spec.palette.get("blue", "blue"),
                               f"tip{k + 1}", fill="none")
    elif isinstance(obj, BetaGraph):
        pts = {x: (float(p[0]), float(p[1]) * math.sqrt(3) / 2) for x, p in obj.vertices.items()}
        if "beta-graph" in spec.layers:
            for a, b in sorted(obj.edges, key=lambda e: (_key(e[0]), _key(e[1]))):
                cv.line(pts[a], pts[b], spec.palette.get("default", "#404040"), f"{a}--{b}")
            for x in sorted(pts, key=_key):
                cv.circle(pts[x], 2, spec.color(roles.get(x)), x)
    elif type(obj).__name__ == "SchematicDrawing":
        pts = {v: (float(p[0]) + float(p[1]) / 2, float(p[1]) * math.sqrt(3) / 2)
               for v, p in obj.points.items()}
        if graph is not None:
            for w, b in sorted(graph.edges):
                cv.line(pts[w], pts[b], spec.color(roles.get(w)), f"{w}--{b}", 0.5)
        for v in sorted(pts):
            cv.circle(pts[v], 0.8, spec.color(roles.get(v)), v)
    else:
        raise RenderError(f"cannot render {type(obj).__name__}")
    return cv.document()
