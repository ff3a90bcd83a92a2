import xml.etree.ElementTree as ET

from swisscheese.render import RenderOptions, render_svg

SVG = "{http://www.w3.org/2000/svg}"


def _circles(svg, cls):
    root = ET.fromstring(svg.encode("utf-8"))
    return [e for e in root.iter(f"{SVG}circle") if e.get("class") == cls]


def test_empty_cheese_figure(empty_cheese):
    svg = render_svg(empty_cheese)
    root = ET.fromstring(svg.encode("utf-8"))
    assert root.tag == f"{SVG}svg" and root.get("version") == "1.1"
    assert len(list(root.iter(f"{SVG}circle"))) == 1
    assert len(_circles(svg, "outer")) == 1
    assert len(list(root.iter(f"{SVG}line"))) == 1
    no_i = render_svg(empty_cheese, RenderOptions(show_I=False))
    assert not list(ET.fromstring(no_i.encode()).iter(f"{SVG}line"))


def test_deletion_count(cheese2):
    svg = render_svg(cheese2)
    assert len(_circles(svg, "deletion")) == len(cheese2.deletions)
    stages = {e.get("data-stage") for e in _circles(svg, "deletion")}
    assert stages == {"1", "2"}


def test_capsules_and_colours(cheese1):
    svg = render_svg(cheese1, RenderOptions(width_px=300, stage_colors={1: "#123456"}, show_K=(1, 3)))
    root = ET.fromstring(svg.encode())
    paths = [e for e in root.iter(f"{SVG}path") if e.get("class") == "capsule"]
    assert [p.get("data-level") for p in paths] == ["1", "3"]
    assert {e.get("fill") for e in _circles(svg, "deletion")} == {"#123456"}
    assert root.get("width") == "300"


def test_floats_are_repr(cheese1):
    d = cheese1.deletions[0].disc
    e = _circles(render_svg(cheese1), "deletion")[0]
    assert e.get("r") == repr(float(d.radius))
    assert e.get("cx") == repr(float(d.center.x))


def test_deterministic(cheese2):
    assert render_svg(cheese2) == render_svg(cheese2)
