import math
import xml.etree.ElementTree as ET

from cvtq.dquant import grid4
from cvtq.formats import REGION_PRESETS
from cvtq.region import Region
from cvtq.svg import render_points, render_region
from cvtq.voronoi import Quantizer

NS = "{http://www.w3.org/2000/svg}"
R2 = math.sqrt(2)


def parse(svg):
    root = ET.fromstring(svg.encode())
    assert root.tag == NS + "svg"
    return root


def by_class(root, cls):
    return [e for e in root.iter() if e.get("class") == cls]


def no_external_refs(svg):
    body = svg.replace('xmlns="http://www.w3.org/2000/svg"', "")
    return "href" not in body and "http" not in body and "url(" not in body


def test_rhombus_with_optimal_pair():
    q = Quantizer((((1 + 1 / R2) / 3, 1 / (3 * R2)), (2 * (1 + 1 / R2) / 3, R2 / 3)))
    svg = render_region(REGION_PRESETS["prop4-rhombus"](), q)
    root = parse(svg)
    cells = by_class(root, "cell")
    assert len(cells) == 2 and all(c.tag == NS + "polygon" for c in cells)
    assert len(by_class(root, "center")) == 2
    assert no_external_refs(svg)


def test_grid_points_colored_by_cell():
    q = Quantizer(((3.5, 3.5), (1.5, 1.5), (1.5, 4), (3.5, 1.5), (1.5, 3)))
    svg = render_points(grid4(), q)
    root = parse(svg)
    pts = by_class(root, "point")
    assert len(pts) == 16
    assert len(by_class(root, "center")) == 5
    assert len({p.get("fill") for p in pts}) == 5
    assert no_external_refs(svg)


def test_disc_half_discs_use_arcs():
    c = 4 / (3 * math.pi)
    svg = render_region(Region.disc(), Quantizer(((0, c), (0, -c))))
    root = parse(svg)
    cells = by_class(root, "cell")
    assert len(cells) == 2
    for cell in cells:
        d = cell.get("d")
        assert cell.tag == NS + "path"
        assert d.count("A ") == 1 and d.count("L ") == 1  # one semicircle plus the diameter


def test_outline_only_and_curve_region():
    root = parse(render_region(REGION_PRESETS["example1"]()))
    assert not by_class(root, "cell") and len(by_class(root, "outline")) == 1
    root = parse(render_region(REGION_PRESETS["example1"](), Quantizer(((0.3, 0.5), (0.5, -0.3)))))
    assert len(by_class(root, "cell")) == 2


def test_title_is_escaped():
    svg = render_points(grid4(), None, title="a<b & c")
    assert parse(svg).find(NS + "title").text == "a<b & c"
