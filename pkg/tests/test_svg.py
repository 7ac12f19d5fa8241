import re

import pytest

from toriclg.polyhedra import PointSet, Polyhedron
from toriclg.svg import convex_hull_2d, render

DIAMOND = Polyhedron(((1, 1), (1, -1), (-1, -1), (-1, 1)), (1, 1, 1, 1))
STOP = Polyhedron(((0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1)), (2, 3, 2, 3, 2, 3, 2, 3))


def _labels(svg):
    return re.findall(r"<text [^>]*>([^<]*)</text>", svg)


def test_diamond():
    svg = render(DIAMOND)
    assert sorted(_labels(svg)) == ["(-1,0)", "(0,-1)", "(0,1)", "(1,0)"]
    assert svg.count("<path d=") == 2  # arrow marker and the region
    assert "marker-end" not in svg


def test_stop_sign():
    svg = render(STOP, "stop & go")
    assert len(_labels(svg)) == 8
    assert "<title>stop &amp; go</title>" in svg
    region = re.search(r'<path d="(M[^"]*Z)"', svg).group(1)
    assert region.count("L") == 7


def test_half_plane_arrows():
    svg = render(Polyhedron(((1, 0),), (0,)))
    assert svg.count('marker-end="url(#arrow)"') == 3


def test_deterministic_and_errors():
    assert render(STOP) == render(STOP)
    with pytest.raises(ValueError):
        render(Polyhedron(((1,),), (0,)))
    with pytest.raises(ValueError):
        render(PointSet(((0, 0, 0),), (), 3))


def test_convex_hull():
    pts = [(0, 0), (2, 0), (1, 0), (2, 2), (0, 2), (1, 1)]
    assert convex_hull_2d(pts) == [(0, 0), (2, 0), (2, 2), (0, 2)]
