import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from tricon.catalog import chevron
from tricon.geometry import Triangle, TriangleFamily, beta_graph, family_from_embedding, realizer_to_embedding
from tricon.oracle import dimension_at_most_k
from tricon.order import order_to_bipartite
from tricon.reduction.templates import gate_family, gate_graph
from tricon.render import RenderError, RenderSpec, render_svg
from tricon.rotor import alternating_rotor_family

NS = "{http://www.w3.org/2000/svg}"


def shapes(svg, tag):
    return ET.fromstring(svg).findall(f"{NS}{tag}")


def test_single_triangle_is_one_polygon():
    svg = render_svg(TriangleFamily(0, {"t": Triangle((1, 1, 1), 0)}))
    assert len(shapes(svg, "polygon")) == 1


def test_empty_family_is_valid_and_blank():
    root = ET.fromstring(render_svg(TriangleFamily(0, {})))
    assert root.tag == f"{NS}svg"
    assert len(list(root)) == 0


def test_chevron_family_has_six_polygons():
    P = chevron()
    E = realizer_to_embedding(P, dimension_at_most_k(P, 3).witness)
    svg = render_svg(family_from_embedding(E, 0))
    assert len(shapes(svg, "polygon")) == 6


def test_rendering_is_deterministic():
    F = gate_family()
    assert render_svg(F) == render_svg(F)


def test_beta_graph_layer():
    F, G = gate_family(), gate_graph()
    B = beta_graph(F, G)
    svg = render_svg(B)
    assert len(shapes(svg, "line")) == len(B.edges)
    assert len(shapes(svg, "circle")) == len(B.vertices)
    assert not shapes(render_svg(B, RenderSpec(layers={"triangles"})), "line")


def test_rotor_overlays():
    svg = render_svg(alternating_rotor_family(2), RenderSpec(layers={"shadow-intervals", "tip-regions"}),
                     rotor=("u", "v"))
    assert len(shapes(svg, "line")) == 3
    assert len(shapes(svg, "polygon")) == 3


@pytest.mark.parametrize("kw", [{"scale": 0}, {"scale": Fraction(-1)}, {"layers": {"bogus"}}])
def test_bad_spec(kw):
    with pytest.raises(RenderError):
        RenderSpec(**kw)


def test_unknown_object():
    with pytest.raises(RenderError):
        render_svg(order_to_bipartite)
