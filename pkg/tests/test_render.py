import re

import pytest

from horotile import render
from horotile.algebra import DyadicRes
from horotile.tiling import assign_indices, enumerate_ford


def test_ford_one_element_per_horoball():
    svg = render.render_svg(render.ford_scene(20))
    assert render.svg_counts(svg)["horoballs"] == 130


def test_deterministic():
    s = render.ford_scene(8)
    assert render.render_svg(s) == render.render_svg(s)


def test_disk_model_inside_unit_disk():
    svg = render.render_svg(render.ford_scene(10), model="disk")
    scale = render.SIZE / 2
    for cx, cy, r in re.findall(r'class="horoball" cx="([-\d.]+)" cy="([-\d.]+)" r="([-\d.]+)"', svg):
        x, y = float(cx) / scale - 1, 1 - float(cy) / scale
        assert (x * x + y * y) ** 0.5 + float(r) / scale <= 1 + 1e-6


def test_binary_and_three_prong_cores():
    assert render.svg_counts(render.render_svg(render.binary_scene(4)))["cores"] > 0
    assert render.svg_counts(render.render_svg(render.binary_scene(3, prongs=3)))["cores"] > 0


def test_tile_scene():
    t = assign_indices(enumerate_ford(4), DyadicRes(0, 6), (DyadicRes(0, 6), DyadicRes(0, 6)))
    counts = render.svg_counts(render.render_svg(render.tile_scene(t, 2)))
    assert counts["cores"] > 0 and counts["horoballs"] == len(t.packing.horoballs)


def test_errors():
    with pytest.raises(render.SceneError):
        render.render_svg(render.Scene())
    with pytest.raises(render.SceneError):
        render.render_svg(render.hexagonal_scene(), model="disk")
    with pytest.raises(render.SceneError):
        render.render_svg(render.ford_scene(3), model="klein")
