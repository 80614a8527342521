import xml.etree.ElementTree as ET

import numpy as np

from morphokit import GpaOptions, gpa
from morphokit.svg import polygons_svg, scores_svg

NS = "{http://www.w3.org/2000/svg}"


def test_single_polygon(arrows):
    root = ET.fromstring(polygons_svg([arrows.get("punta1")]))
    assert len(root.findall(f"{NS}path")) == 1
    assert len(root.findall(f"{NS}circle")) == 1
    d = root.find(f"{NS}path").get("d")
    assert d.startswith("M ") and d.endswith(" Z") and d.count(" L ") == 6


def test_byte_identical(arrows):
    assert polygons_svg(arrows.configurations) == polygons_svg(arrows.configurations)


def test_gpa_overlay(arrows):
    res = gpa(arrows.configurations, GpaOptions())
    root = ET.fromstring(polygons_svg(res.aligned))
    ids = [p.get("id") for p in root.findall(f"{NS}path")]
    assert ids == arrows.ids


def test_y_is_flipped():
    from morphokit import Configuration

    svg = polygons_svg([Configuration("t", [[0, 0], [1, 0], [0, 2]])])
    assert "L 0 -2" in svg


def test_scores_plot():
    root = ET.fromstring(scores_svg(np.array([[1.0, 0.5], [-1.0, -0.5]]), ["a", "<b>"]))
    assert [t.text for t in root.findall(f"{NS}text")] == ["a", "<b>"]
