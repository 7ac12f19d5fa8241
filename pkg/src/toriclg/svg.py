"""Deterministic SVG pictures of 2-D polyhedra.

Lattice units are 40px with the y axis pointing up.  The region is
clipped exactly (rationals) to a viewport around the vertices and the
origin; unbounded directions are drawn as arrows from the vertices where
they run along the boundary.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from . import exactlinalg as xl
from .polyhedra import PointSet, Polyhedron, vertices_and_rays

UNIT = 40
PAD = 1  # lattice units around the viewport


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points) -> list:
    """Counter-clockwise hull without collinear points (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _clip(poly, box):
    """Sutherland-Hodgman against the axis box ``(x0, y0, x1, y1)``."""
    x0, y0, x1, y1 = box
    edges = [
        (lambda p: p[0] >= x0, lambda p, q: _at_x(p, q, x0)),
        (lambda p: p[0] <= x1, lambda p, q: _at_x(p, q, x1)),
        (lambda p: p[1] >= y0, lambda p, q: _at_y(p, q, y0)),
        (lambda p: p[1] <= y1, lambda p, q: _at_y(p, q, y1)),
    ]
    out = list(poly)
    for inside, cut in edges:
        if not out:
            break
        src, out = out, []
        for i, q in enumerate(src):
            p = src[i - 1]
            if inside(q):
                if not inside(p):
                    out.append(cut(p, q))
                out.append(q)
            elif inside(p):
                out.append(cut(p, q))
    dedup = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def _at_x(p, q, x):
    t = (x - p[0]) / (q[0] - p[0])
    return (Fraction(x), p[1] + t * (q[1] - p[1]))


def _at_y(p, q, y):
    t = (y - p[1]) / (q[1] - p[1])
    return (p[0] + t * (q[0] - p[0]), Fraction(y))


def _exit_param(v, r, box) -> Fraction:
    """Largest ``t`` with ``v + t r`` in the box (``v`` inside)."""
    x0, y0, x1, y1 = box
    ts = []
    for c, lo, hi in ((0, x0, x1), (1, y0, y1)):
        if r[c] > 0:
            ts.append((hi - v[c]) / Fraction(r[c]))
        elif r[c] < 0:
            ts.append((lo - v[c]) / Fraction(r[c]))
    return min(ts)


def _fmt(x) -> str:
    return "%.2f" % float(x)


def _label(p) -> str:
    return "(" + ",".join(xl.format_fraction(x) for x in p) + ")"


def render(P: Polyhedron | PointSet, title: str | None = None) -> str:
    if isinstance(P, Polyhedron):
        if P.dim != 2:
            raise ValueError(f"only 2-dimensional polyhedra can be plotted, not dimension {P.dim}")
        V = vertices_and_rays(P)
    else:
        V = P
        if V.dim != 2:
            raise ValueError(f"only 2-dimensional polyhedra can be plotted, not dimension {V.dim}")
    pts = [tuple(Fraction(x) for x in p) for p in V.points]
    rays = [tuple(r) for r in V.rays]

    xs = [p[0] for p in pts] + [Fraction(0)]
    ys = [p[1] for p in pts] + [Fraction(0)]
    margin = 3 if rays else 1
    box = (
        math.floor(min(xs)) - margin,
        math.floor(min(ys)) - margin,
        math.ceil(max(xs)) + margin,
        math.ceil(max(ys)) + margin,
    )
    x0, y0, x1, y1 = box
    W = (x1 - x0 + 2 * PAD) * UNIT
    H = (y1 - y0 + 2 * PAD) * UNIT

    def px(p):
        return _fmt((p[0] - x0 + PAD) * UNIT), _fmt((y1 - p[1] + PAD) * UNIT)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        "<defs>",
        '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse">',
        '<path d="M0,0 L10,5 L0,10 z" fill="#b03030"/>',
        "</marker>",
        "</defs>",
    ]
    if title:
        out.append(f"<title>{_escape(title)}</title>")
    out.append('<rect x="0" y="0" width="%d" height="%d" fill="#ffffff"/>' % (W, H))
    # grid
    out.append('<g stroke="#dddddd" stroke-width="1">')
    for x in range(x0, x1 + 1):
        a, b = px((x, y0)), px((x, y1))
        out.append(f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}"/>')
    for y in range(y0, y1 + 1):
        a, b = px((x0, y)), px((x1, y))
        out.append(f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}"/>')
    out.append("</g>")

    region = []
    if pts:
        R = 4 * (x1 - x0 + y1 - y0)
        far = list(pts) + [(p[0] + R * r[0], p[1] + R * r[1]) for p in pts for r in rays]
        hull = convex_hull_2d(far)
        region = _clip(hull, box) if len(hull) > 2 else hull
    if len(region) > 2:
        d = " ".join(("M" if i == 0 else "L") + "%s,%s" % px(p) for i, p in enumerate(region)) + " Z"
        out.append(f'<path d="{d}" fill="#4a78b5" fill-opacity="0.25" stroke="none"/>')
        # facet edges: boundary edges not lying on the viewport frame
        out.append('<g stroke="#1f3f73" stroke-width="2">')
        for i, p in enumerate(region):
            q = region[(i + 1) % len(region)]
            if _on_frame(p, q, box):
                continue
            a, b = px(p), px(q)
            out.append(f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}"/>')
        out.append("</g>")
    elif len(region) == 2:
        a, b = px(region[0]), px(region[1])
        out.append(f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" stroke="#1f3f73" stroke-width="2"/>')

    # rays
    if rays and pts:
        out.append('<g stroke="#b03030" stroke-width="2" fill="none">')
        R = 4 * (x1 - x0 + y1 - y0)
        far = list(pts) + [(p[0] + R * r[0], p[1] + R * r[1]) for p in pts for r in rays]
        for r in rays:
            starts = [v for v in pts if _supports(v, r, far)]
            dashed = not starts
            for v in starts or pts[:1]:
                t = _exit_param(v, r, box)
                end = (v[0] + t * r[0], v[1] + t * r[1])
                a, b = px(v), px(end)
                extra = ' stroke-dasharray="6,4"' if dashed else ""
                out.append(f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" marker-end="url(#arrow)"{extra}/>')
        out.append("</g>")

    # origin
    o = px((0, 0))
    out.append(f'<circle cx="{o[0]}" cy="{o[1]}" r="5" fill="none" stroke="#000000" stroke-width="1.5"/>')
    out.append(f'<circle cx="{o[0]}" cy="{o[1]}" r="1.5" fill="#000000"/>')

    # vertices and labels
    out.append('<g font-family="monospace" font-size="12" fill="#000000">')
    for p in sorted(pts):
        a = px(p)
        out.append(f'<circle cx="{a[0]}" cy="{a[1]}" r="4" fill="#1f3f73"/>')
        out.append(f'<text x="{_fmt(float(a[0]) + 6)}" y="{_fmt(float(a[1]) - 6)}">{_escape(_label(p))}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _on_frame(p, q, box) -> bool:
    x0, y0, x1, y1 = box
    return (p[0] == q[0] and p[0] in (x0, x1)) or (p[1] == q[1] and p[1] in (y0, y1))


def _supports(v, r, pts: Sequence) -> bool:
    """Whether the line through ``v`` along ``r`` has every point on one side."""
    sides = {(_cross(v, (v[0] + r[0], v[1] + r[1]), p) > 0) - (_cross(v, (v[0] + r[0], v[1] + r[1]), p) < 0) for p in pts}
    return not ({1, -1} <= sides)


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
