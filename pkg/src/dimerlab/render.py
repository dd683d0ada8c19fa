"""SVG drawings of a quiver on its fundamental domain.

Vertex layouts are in lattice coordinates, [0,1)^2 being one fundamental
domain.  An arrow runs from its tail to the translate of its head by the
arrow's offset; it is drawn once per lattice translate that meets the
domain, and everything is clipped to the domain square, so arrows that
wrap around appear split at the boundary.
"""
from __future__ import annotations

import math
from typing import Iterable, Optional
from xml.sax.saxutils import escape

from .quiver import DimerQuiver, Path

SIZE = 400
MARGIN = 40
RADIUS = 9

COLORS = {
    "arrow": "#444444",
    "contracted": "#1a9850",
    "matching": "#2166ac",
    "path": "#d73027",
}


def _fmt(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _xy(p) -> tuple:
    return MARGIN + p[0] * SIZE, MARGIN + (1 - p[1]) * SIZE


def auto_layout(n: int) -> tuple:
    """Vertices on a diagonal when the quiver has no layout."""
    return tuple(((k + 0.5) / n, (k + 0.5) / n) for k in range(n))


def _meets_domain(p, q) -> bool:
    """Liang-Barsky test of the segment p..q against [0,1]^2."""
    t0, t1 = 0.0, 1.0
    d = (q[0] - p[0], q[1] - p[1])
    for k in range(2):
        for num, den in ((p[k], -d[k]), (1 - p[k], d[k])):
            if den == 0:
                if num < 0:
                    return False
                continue
            t = num / den
            if den < 0:
                t0 = max(t0, t)
            else:
                t1 = min(t1, t)
    return t0 <= t1


def _translates(p, q):
    """Integer shifts (i, j) for which the segment p+ij .. q+ij meets [0,1]^2."""
    xs = (p[0], q[0])
    ys = (p[1], q[1])
    for i in range(math.ceil(-max(xs)), math.floor(1 - min(xs)) + 1):
        for j in range(math.ceil(-max(ys)), math.floor(1 - min(ys)) + 1):
            if _meets_domain((p[0] + i, p[1] + j), (q[0] + i, q[1] + j)):
                yield i, j


def _shorten(a, b, r):
    dx, dy = b[0] - a[0], b[1] - a[1]
    n = math.hypot(dx, dy)
    if n <= 2 * r:
        return a, b
    ux, uy = dx / n, dy / n
    return (a[0] + ux * r, a[1] + uy * r), (b[0] - ux * r, b[1] - uy * r)


def _inside(p) -> bool:
    return 0 <= p[0] <= 1 and 0 <= p[1] <= 1


def render(q: DimerQuiver, contracted: Iterable = (), matching: Iterable = (),
           path: Optional[Path] = None, title: str = "") -> str:
    """SVG 1.1 text.  Overlays: contracted arrows (green), a matching (blue), a path (red)."""
    layout = q.layout or auto_layout(q.vertex_count)
    green = {q.arrow_id(a) for a in contracted}
    blue = {q.arrow_id(a) for a in matching}
    red = set(path.arrows) if path is not None else set()
    w = SIZE + 2 * MARGIN
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{w}" viewBox="0 0 {w} {w}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append("<defs>")
    out.append(f'<clipPath id="domain"><rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}"/></clipPath>')
    for key, col in COLORS.items():
        out.append(f'<marker id="head-{key}" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" '
                   f'markerHeight="7" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="{col}"/></marker>')
    out.append("</defs>")
    out.append(f'<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="white" '
               'stroke="#888888" stroke-dasharray="6,4"/>')
    out.append('<g clip-path="url(#domain)" fill="none">')
    labels = []
    for a, arr in enumerate(q.arrows):
        key = "contracted" if a in green else "path" if a in red else "matching" if a in blue else "arrow"
        width = 3 if key != "arrow" else 1.5
        p = layout[arr.tail]
        h = layout[arr.head]
        e = (h[0] + arr.offset[0], h[1] + arr.offset[1])
        for i, j in _translates(p, e):
            s0, s1 = _shorten(_xy((p[0] + i, p[1] + j)), _xy((e[0] + i, e[1] + j)), RADIUS + 1)
            out.append(f'<line x1="{_fmt(s0[0])}" y1="{_fmt(s0[1])}" x2="{_fmt(s1[0])}" y2="{_fmt(s1[1])}" '
                       f'stroke="{COLORS[key]}" stroke-width="{width}" marker-end="url(#head-{key})"/>')
            mid = ((p[0] + e[0]) / 2 + i, (p[1] + e[1]) / 2 + j)
            if _inside(mid):
                labels.append((mid, arr.name, COLORS[key]))
    out.append("</g>")
    for mid, name, col in labels:
        x, y = _xy(mid)
        out.append(f'<text x="{_fmt(x + 4)}" y="{_fmt(y - 4)}" font-family="sans-serif" font-size="12" '
                   f'fill="{col}">{escape(name)}</text>')
    for v, p in enumerate(layout):
        x, y = _xy(p)
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{RADIUS}" fill="white" stroke="black"/>')
        out.append(f'<text x="{_fmt(x)}" y="{_fmt(y + 4)}" font-family="sans-serif" font-size="11" '
                   f'text-anchor="middle">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
