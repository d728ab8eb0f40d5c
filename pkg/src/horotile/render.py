"""SVG output for packings and tilings, in the half-plane or the Poincare disk.

Geometry is float only here.  Horoballs become circles; core quadrilaterals
become closed paths of cubic segments fitted to the images of their edges.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geom import Horoball

SIZE = 800.0
SEGMENTS = 8  # cubic pieces per core edge


class SceneError(ValueError):
    pass


def _r6(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


@dataclass
class Quad:
    """Four frame vertices joined by straight frame edges, then mapped by ``mobius``."""

    vertices: tuple  # complex, in the frame
    mobius: tuple = (1.0, 0.0, 0.0, 1.0)
    cls: str = "core"


@dataclass
class Scene:
    horoballs: list = field(default_factory=list)
    disks: list = field(default_factory=list)  # Euclidean (cx, cy, r)
    quads: list = field(default_factory=list)
    window: tuple | None = None  # half-plane (xlo, xhi, ylo, yhi)
    title: str = ""

    def is_empty(self) -> bool:
        return not (self.horoballs or self.disks or self.quads)


def _mob(m, z: complex) -> complex:
    a, b, c, d = m
    return (a * z + b) / (c * z + d)


def _mob_deriv(m, z: complex) -> complex:
    a, b, c, d = m
    return (a * d - b * c) / (c * z + d) ** 2


def _cayley(z: complex) -> complex:
    return (z - 1j) / (z + 1j)


def _cayley_deriv(z: complex) -> complex:
    return 2j / (z + 1j) ** 2


def _circumcircle(p1: complex, p2: complex, p3: complex):
    ax, ay, bx, by, cx, cy = p1.real, p1.imag, p2.real, p2.imag, p3.real, p3.imag
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if abs(d) < 1e-300:
        raise SceneError("degenerate circle")
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    c = complex(ux, uy)
    return c, abs(p1 - c)


class _View:
    def __init__(self, model: str, window):
        if model not in ("half-plane", "disk"):
            raise SceneError(f"unknown model {model!r}")
        self.model = model
        if model == "disk":
            self.window = (-1.0, 1.0, -1.0, 1.0)
        else:
            xlo, xhi, ylo, yhi = window
            if not (xhi > xlo and yhi > ylo):
                raise SceneError("empty window")
            self.window = (xlo, xhi, ylo, yhi)
        xlo, xhi, ylo, yhi = self.window
        self.scale = SIZE / max(xhi - xlo, yhi - ylo)
        self.width = (xhi - xlo) * self.scale
        self.height = (yhi - ylo) * self.scale

    def point(self, z: complex) -> complex:
        return _cayley(z) if self.model == "disk" else z

    def deriv(self, z: complex) -> complex:
        return _cayley_deriv(z) if self.model == "disk" else 1.0

    def px(self, w: complex) -> tuple[float, float]:
        xlo, _, _, yhi = self.window
        return (w.real - xlo) * self.scale, (yhi - w.imag) * self.scale


def _horoball_circle(view: _View, h: Horoball):
    """Centre and radius of the horoball's boundary in model coordinates."""
    if view.model == "half-plane":
        if h.at_inf:
            return None
        d = float(h.size)
        return complex(float(h.tangent), d / 2), d / 2
    if h.at_inf:
        t = float(h.size)
        return complex(t / (t + 1), 0), 1 / (t + 1)
    x, d = float(h.tangent), float(h.size)
    pts = [complex(x, 0), complex(x - d / 2, d / 2), complex(x + d / 2, d / 2)]
    return _circumcircle(*(view.point(p) for p in pts))


def _edge_path(view: _View, m, z0: complex, z1: complex, first: bool) -> list[str]:
    out = []
    for s in range(SEGMENTS):
        t0, t1 = s / SEGMENTS, (s + 1) / SEGMENTS
        a, b = z0 + (z1 - z0) * t0, z0 + (z1 - z0) * t1
        dz = (z1 - z0) * (t1 - t0)
        pa, pb = view.point(_mob(m, a)), view.point(_mob(m, b))
        da = view.deriv(_mob(m, a)) * _mob_deriv(m, a) * dz
        db = view.deriv(_mob(m, b)) * _mob_deriv(m, b) * dz
        c1, c2 = pa + da / 3, pb - db / 3
        if first and s == 0:
            out.append("M {} {}".format(*map(_r6, view.px(pa))))
        out.append("C {} {} {} {} {} {}".format(*map(_r6, (*view.px(c1), *view.px(c2), *view.px(pb)))))
    return out


def default_window(scene: Scene) -> tuple:
    if scene.window is not None:
        return scene.window
    xs, ys = [], [0.0]
    for h in scene.horoballs:
        if not h.at_inf:
            xs.append(float(h.tangent))
            ys.append(float(h.size))
    for cx, cy, r in scene.disks:
        xs += [cx - r, cx + r]
        ys += [cy - r, cy + r]
    for q in scene.quads:
        for v in q.vertices:
            z = _mob(q.mobius, v)
            xs.append(z.real)
            ys.append(z.imag)
    if not xs:
        xs = [-1.0, 1.0]
    lo, hi = min(xs), max(xs)
    pad = 0.05 * (hi - lo or 1.0)
    return (lo - pad, hi + pad, min(ys), max(max(ys), 1.0) * 1.1)


def render_svg(scene: Scene, model: str = "half-plane", stroke: float = 1.0) -> str:
    """Deterministic SVG text; every horoball gets one element of class 'horoball'."""
    if scene.is_empty():
        raise SceneError("nothing to render")
    view = _View(model, default_window(scene))
    sw = _r6(stroke)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_r6(view.width)}" height="{_r6(view.height)}" '
        f'viewBox="0 0 {_r6(view.width)} {_r6(view.height)}">',
    ]
    if scene.title:
        lines.append(f"<title>{scene.title}</title>")
    if model == "disk":
        cx, cy = view.px(0j)
        lines.append(f'<circle class="boundary" cx="{_r6(cx)}" cy="{_r6(cy)}" r="{_r6(view.scale)}" '
                     f'fill="none" stroke="black" stroke-width="{sw}"/>')
    for h in scene.horoballs:
        circ = _horoball_circle(view, h)
        if circ is None:
            # {y >= h} in the half-plane: a band to the top of the window
            xlo, xhi, _, yhi = view.window
            x0, y0 = view.px(complex(xlo, float(h.size)))
            x1, _ = view.px(complex(xhi, yhi))
            lines.append(f'<rect class="horoball" x="{_r6(x0)}" y="0" width="{_r6(x1 - x0)}" height="{_r6(y0)}" '
                         f'fill="#cfe0f5" stroke="black" stroke-width="{sw}"/>')
            continue
        c, r = circ
        px, py = view.px(c)
        lines.append(f'<circle class="horoball" cx="{_r6(px)}" cy="{_r6(py)}" r="{_r6(r * view.scale)}" '
                     f'fill="#cfe0f5" stroke="black" stroke-width="{sw}"/>')
    for cx, cy, r in scene.disks:
        if model == "disk":
            raise SceneError("Euclidean disks have no disk-model rendering")
        px, py = view.px(complex(cx, cy))
        lines.append(f'<circle class="disk" cx="{_r6(px)}" cy="{_r6(py)}" r="{_r6(r * view.scale)}" '
                     f'fill="#cfe0f5" stroke="black" stroke-width="{sw}"/>')
    for q in scene.quads:
        parts = []
        vs = q.vertices
        for i in range(len(vs)):
            parts += _edge_path(view, q.mobius, vs[i], vs[(i + 1) % len(vs)], i == 0)
        parts.append("Z")
        lines.append(f'<path class="{q.cls}" d="{" ".join(parts)}" fill="none" stroke="black" stroke-width="{sw}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# -- scenes ---------------------------------------------------------------------------


def ford_scene(q_max: int, window=(0, 1)) -> Scene:
    from .tiling import enumerate_ford

    p = enumerate_ford(q_max, window)
    return Scene(horoballs=list(p.horoballs), window=(float(window[0]) - 0.05, float(window[1]) + 0.05, 0.0, 1.3),
                 title=f"Ford horoballs, q <= {q_max}")


def hecke_scene(word_len: int) -> Scene:
    from .tiling import enumerate_hecke

    p = enumerate_hecke(word_len)
    return Scene(horoballs=list(p.horoballs), window=(-2.2, 2.2, 0.0, 1.6),
                 title=f"Hecke G5 horoballs, word length <= {word_len}")


def hexagonal_scene(radius: float = 1.0, extent: int = 4) -> Scene:
    disks = []
    h = math.sqrt(3.0) * radius
    for j in range(-extent, extent + 1):
        shift = radius if j % 2 else 0.0
        for i in range(-extent, extent + 1):
            disks.append((2 * radius * i + shift, j * h, radius))
    w = 2 * radius * extent
    return Scene(disks=disks, window=(-w, w, -w, w), title="hexagonal disk packing")


def binary_scene(depth: int, prongs: int = 2, choices=None, window=(-4, 4)) -> Scene:
    from .tiling import build_degenerate

    choices = [0] * depth if choices is None else choices
    t = build_degenerate(choices, depth, prongs)
    top = min(depth, 2)
    quads = []
    for x0, x1, y0, y1 in t.cores(window[0], window[1], -depth, top):
        x0, x1 = max(float(x0), window[0]), min(float(x1), window[1])
        quads.append(Quad((complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1))))
    return Scene(quads=quads, window=(window[0], window[1], 0.0, float(prongs) ** (top + 1)),
                 title=f"{prongs}-pronged binary tiling, depth {depth}")


def tile_scene(t, rows: int) -> Scene:
    """Cores of the first ``rows`` rows of every horoball of a labelled approximant."""
    from .tiling import theta_N

    quads = []
    for tiles in theta_N(t, rows).values():
        for tp in tiles:
            quads.append(Quad(tuple(tp.frame_vertices()), tuple(float(e) for e in tp.normalizer.entries())))
    return Scene(horoballs=list(t.packing.horoballs), quads=quads, title=f"{rows}-row truncation")


def svg_counts(svg: str) -> dict:
    return {
        "horoballs": svg.count('class="horoball"'),
        "disks": svg.count('class="disk"'),
        "cores": svg.count('class="core"'),
    }
