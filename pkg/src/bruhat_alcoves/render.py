"""Static SVG rendering of the alcove picture: grids, polygons, stars, intervals.

All geometry stays exact until serialization; scaled lattice coordinates
are mapped to the orthonormal plane through the Gram matrix of the weight
basis and rounded to six decimals only when written out, so identical
scenes produce byte-identical documents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from . import a2
from .geometry import Polygon, Pt

# orthonormal embedding of the fundamental weights (|w_i|^2 = 2/3, angle 60)
_W1X = math.sqrt(2.0 / 3.0)
_W2X = _W1X / 2.0
_W2Y = math.sqrt(0.5)
_PIXELS = 40.0  # pixels per weight-lattice unit


class RenderError(Exception):
    pass


def _xy(p: Pt) -> Tuple[float, float]:
    u = float(p[0]) / 6.0
    v = float(p[1]) / 6.0
    x = u * _W1X + v * _W2X
    y = u * 0.0 + v * _W2Y
    return x * _PIXELS, -y * _PIXELS  # svg y axis points down


def _fmt(x: float) -> str:
    out = "%.6f" % (x + 0.0,)
    return "0.000000" if out == "-0.000000" else out


def _path(points: Sequence[Pt], closed: bool = True) -> str:
    parts = []
    for k, p in enumerate(points):
        x, y = _xy(p)
        parts.append("%s%s %s" % ("M" if k == 0 else "L", _fmt(x), _fmt(y)))
    if closed:
        parts.append("Z")
    return " ".join(parts)


@dataclass
class Layer:
    kind: str  # grid | cells | polygon | star
    data: object
    style: str


@dataclass
class RenderScene:
    """Layers over a lattice window given by scaled coordinate bounds."""

    umin: int
    umax: int
    vmin: int
    vmax: int
    layers: List[Layer] = field(default_factory=list)

    def add_grid(self, style: str = "stroke:#999;stroke-width:0.7;fill:none"):
        self.layers.append(Layer("grid", None, style))
        return self

    def add_cells(self, elements: Iterable[a2.A2Elt], style: str = "fill:#7aa0d0;stroke:none"):
        self.layers.append(Layer("cells", tuple(elements), style))
        return self

    def add_polygon(self, poly: Polygon, style: str = "stroke:#b03030;stroke-width:1.6;fill:none"):
        self.layers.append(Layer("polygon", poly, style))
        return self

    def add_star(self, st: a2.Star, style: str = "stroke:#207020;stroke-width:1.6;fill:none"):
        self.layers.append(Layer("star", st, style))
        return self


def scene_window(points: Iterable[Pt], margin: int = 8) -> RenderScene:
    pts = list(points)
    if not pts:
        raise RenderError("cannot build a scene around no points")
    us = [int(p[0]) for p in pts]
    vs = [int(p[1]) for p in pts]
    return RenderScene(min(us) - margin, max(us) + margin, min(vs) - margin, max(vs) + margin)


def _alcove_outline(z: a2.A2Elt) -> Tuple[Pt, Pt, Pt]:
    m = z.map
    return (m(Pt(0, 0)), m(Pt(-6, 0)), m(Pt(0, -6)))


def _grid_alcoves(scene: RenderScene) -> List[Tuple[Pt, Pt, Pt]]:
    out = []
    for u in range(scene.umin, scene.umax + 1):
        if u % 6 not in (2, 4):
            continue
        v0 = scene.vmin + (u % 6 - scene.vmin) % 6
        for v in range(v0, scene.vmax + 1, 6):
            out.append(_alcove_outline(a2.A2Elt.from_center(Pt(u, v))))
    return out


def render_svg(scene: RenderScene) -> str:
    """Deterministic SVG 1.1 document for a scene."""
    if scene.umin >= scene.umax or scene.vmin >= scene.vmax:
        raise RenderError("degenerate scene viewport")
    if not scene.layers:
        raise RenderError("empty scene")
    corners = [
        Pt(scene.umin, scene.vmin),
        Pt(scene.umin, scene.vmax),
        Pt(scene.umax, scene.vmin),
        Pt(scene.umax, scene.vmax),
    ]
    xs, ys = zip(*[_xy(p) for p in corners])
    x0, y0 = min(xs) - 5, min(ys) - 5
    w, h = max(xs) - min(xs) + 10, max(ys) - min(ys) + 10
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'viewBox="%s %s %s %s">' % (_fmt(x0), _fmt(y0), _fmt(w), _fmt(h))
    ]
    for layer in scene.layers:
        lines.append('  <g style="%s">' % layer.style)
        if layer.kind == "grid":
            for tri in _grid_alcoves(scene):
                lines.append('    <path d="%s"/>' % _path(tri))
        elif layer.kind == "cells":
            for z in layer.data:
                lines.append('    <path d="%s"/>' % _path(_alcove_outline(z)))
        elif layer.kind == "polygon":
            poly = layer.data
            if len(poly) >= 2:
                lines.append('    <path d="%s"/>' % _path(list(poly), closed=len(poly) > 2))
            elif len(poly) == 1:
                x, y = _xy(poly[0])
                lines.append('    <circle cx="%s" cy="%s" r="2.5"/>' % (_fmt(x), _fmt(y)))
        elif layer.kind == "star":
            st = layer.data
            lines.append('    <path d="%s"/>' % _path(st.tri1))
            lines.append('    <path d="%s"/>' % _path(st.tri2))
        else:
            raise RenderError("unknown layer kind %r" % layer.kind)
        lines.append("  </g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# -- ready-made figures ---------------------------------------------------------


def figure_c_polygon(y: a2.A2Elt) -> str:
    poly = a2.c_polygon(y)
    scene = scene_window(list(poly) + [y.cen])
    scene.add_grid()
    scene.add_cells(a2.interval_geom(a2.identity(), y))
    scene.add_polygon(poly)
    return render_svg(scene)


def figure_star(x: a2.A2Elt) -> str:
    st = a2.star(x)
    scene = scene_window(list(st.tri1) + list(st.tri2))
    scene.add_grid()
    scene.add_cells([x], style="fill:#d0a040;stroke:none")
    scene.add_star(st)
    return render_svg(scene)


def figure_interval(x: a2.A2Elt, y: a2.A2Elt) -> str:
    elements = a2.interval_geom(x, y)
    poly = a2.c_polygon(y)
    scene = scene_window(list(poly) + [z.cen for z in elements])
    scene.add_grid()
    scene.add_cells(elements)
    scene.add_polygon(poly)
    if not x.is_identity():
        scene.add_star(a2.star(x))
    return render_svg(scene)


def figure_pgn(x: a2.A2Elt, y: a2.A2Elt) -> str:
    scene = scene_window([x.cen, y.cen], margin=20)
    scene.add_grid()
    scene.add_cells(a2.interval_geom(x, y))
    for w in a2.WF_NAMES:
        poly = a2.pgn(x, y, w)
        if not poly.is_empty():
            scene.add_polygon(poly)
    return render_svg(scene)
