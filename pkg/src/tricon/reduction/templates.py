"""Hand-authored local templates, each checked by its own test.

The gate template uses points for whites and equal triangles (side parameter
``GATE_SIZE``) for blacks, so it is also a point/unit-triangle representation.
The enclosing cycle runs upwards along X = 0 with the clause inside (X > 0);
two strand paths cross it through the gate, the upper one reaching deeper.
"""

from __future__ import annotations

from ..geometry import Triangle, TriangleFamily
from ..order import BipartiteGraph

GATE_SIZE = 100

_GATE_WHITE = {
    "wb": (0, -40), "wa": (0, 40),          # cycle neighbours of the gate
    "cm": (5, -130), "cp": (-5, 130),       # next cycle whites
    "r1": (-20, -10), "r2": (-35, 10),      # red ends of the two strand paths
    "in1": (70, -12), "in2": (20, 8),       # path whites inside the cycle
    "out1": (-100, -20), "out2": (-70, 12),  # path whites outside
}
_GATE_BLACK = {
    "gate": (2, 42), "km": (5, -40), "kp": (0, 130),
    "b1": (75, -9), "b2": (62, 11), "g1": (-18, -8), "g2": (-34, 15),
}
_GATE_EDGES = (
    ("wb", "gate"), ("wa", "gate"), ("r1", "gate"), ("r2", "gate"),
    ("cm", "km"), ("wb", "km"), ("wa", "kp"), ("cp", "kp"),
    ("r1", "b1"), ("in1", "b1"), ("r2", "b2"), ("in2", "b2"),
    ("r1", "g1"), ("out1", "g1"), ("r2", "g2"), ("out2", "g2"),
)


def gate_graph():
    return BipartiteGraph(frozenset(_GATE_WHITE), frozenset(_GATE_BLACK), frozenset(_GATE_EDGES))


def gate_family():
    tris = {w: Triangle((x, y, -x - y), 0) for w, (x, y) in _GATE_WHITE.items()}
    tris.update({b: Triangle((x, y, GATE_SIZE - x - y), 0) for b, (x, y) in _GATE_BLACK.items()})
    return TriangleFamily(0, tris)
