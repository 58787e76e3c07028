"""Standalone SVG diagrams of regions, Voronoi cells and quantizers."""
from __future__ import annotations

import math
from xml.sax.saxutils import quoteattr

import numpy as np

from . import geom
from .dquant import DiscreteUniform, assign
from .region import Region
from .voronoi import Quantizer, cell_halfplanes

SIZE = 480
PAD = 24
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22")
CURVE_SAMPLES = 400


class _Frame:
    """Maps model coordinates to SVG pixels with the x2 axis pointing up."""

    def __init__(self, bbox):
        x0, y0, x1, y1 = bbox
        w = max(x1 - x0, 1e-12)
        h = max(y1 - y0, 1e-12)
        self.k = (SIZE - 2 * PAD) / max(w, h)
        self.x0, self.y1 = x0, y1
        self.width = 2 * PAD + self.k * w
        self.height = 2 * PAD + self.k * h

    def __call__(self, p):
        p = tuple(p)
        return PAD + self.k * (p[0] - self.x0), PAD + self.k * (self.y1 - p[1])

    def pts(self, v) -> str:
        return " ".join("%.4f,%.4f" % self(p) for p in v)


def _outline(shape) -> np.ndarray:
    """Polygonal outline, ccw; curves are sampled."""
    if shape.kind == "polygon":
        return shape.polygon.array
    if shape.kind == "disc":
        t = np.linspace(0, 2 * math.pi, CURVE_SAMPLES, endpoint=False)
        return np.array(tuple(shape.center)) + shape.radius * np.c_[np.cos(t), np.sin(t)]
    x = np.linspace(shape.a, shape.b, CURVE_SAMPLES)
    lower = np.c_[x, [shape.g(s) for s in x]]
    upper = np.c_[x, [shape.f(s) for s in x]][::-1]
    v = np.vstack([lower, upper])
    for h in shape.halfplanes:
        v = geom.clip_vertices(v, h)
    return v


def _disc_path(shape, frame: _Frame) -> str:
    status, chord, arcs = shape.layout()
    c = np.array(tuple(shape.center))
    r = shape.radius * frame.k
    if status == "full":
        p = c + [shape.radius, 0.0]
        q = c - [shape.radius, 0.0]
        return ("M %.4f,%.4f " % frame(p) + "A %.4f %.4f 0 1 0 %.4f,%.4f " % (r, r, *frame(q))
                + "A %.4f %.4f 0 1 0 %.4f,%.4f Z" % (r, r, *frame(p)))
    starts = {}
    for t0, t1 in arcs:
        span = (t1 - t0) % (2 * math.pi)
        starts[(round(math.cos(t0), 9), round(math.sin(t0), 9))] = span
    out = ["M %.4f,%.4f" % frame(chord[0])]
    k = len(chord)
    for i in range(k):
        p, q = chord[i], chord[(i + 1) % k]
        u = (p - c) / shape.radius
        span = starts.get((round(u[0], 9), round(u[1], 9)))
        if span is not None and abs(np.linalg.norm(p - c) - shape.radius) < 1e-9 * shape.radius:
            # ccw in model space is clockwise on screen
            out.append("A %.4f %.4f 0 %d 0 %.4f,%.4f" % (r, r, int(span > math.pi), *frame(q)))
        else:
            out.append("L %.4f,%.4f" % frame(q))
    return " ".join(out) + " Z"


def _cross(frame: _Frame, c, size: float = 6.0) -> str:
    x, y = frame(c)
    return (f'<path class="center" d="M {x - size:.4f},{y - size:.4f} L {x + size:.4f},{y + size:.4f} '
            f'M {x - size:.4f},{y + size:.4f} L {x + size:.4f},{y - size:.4f}" '
            'stroke="black" stroke-width="2" fill="none"/>')


def _document(frame: _Frame, body: list, title: str) -> str:
    head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{frame.width:.0f}" height="{frame.height:.0f}" '
            f'viewBox="0 0 {frame.width:.4f} {frame.height:.4f}">\n'
            f'<title>{title}</title>\n'
            f'<rect width="100%" height="100%" fill="white"/>\n')
    return head + "\n".join(body) + "\n</svg>\n"


def render_region(region: Region, q: Quantizer | None = None, title: str = "cvtq") -> str:
    """Region outline, one ``class="cell"`` element per non-empty Voronoi cell, crosses at centers."""
    shape = region.shape
    frame = _Frame(shape.bbox())
    body = []
    if q is not None:
        for i in range(len(q)):
            hs = cell_halfplanes(q.centers, i)
            color = PALETTE[i % len(PALETTE)]
            style = f'fill="{color}" fill-opacity="0.18" stroke="#444" stroke-width="1"'
            if shape.kind == "disc":
                piece = shape.clipped(hs)
                if piece is None:
                    continue
                body.append(f'<path class="cell" d="{_disc_path(piece, frame)}" {style}/>')
                continue
            v = _outline(shape)
            for h in hs:
                v = geom.clip_vertices(v, h)
                if len(v) < 3:
                    break
            if len(v) >= 3 and abs(geom._signed_area(v)) > geom.GEOM_TOL:
                body.append(f'<polygon class="cell" points="{frame.pts(v)}" {style}/>')
    if shape.kind == "disc":
        body.append(f'<path class="outline" d="{_disc_path(shape, frame)}" fill="none" '
                    'stroke="black" stroke-width="2"/>')
    else:
        body.append(f'<polygon class="outline" points="{frame.pts(_outline(shape))}" fill="none" '
                    'stroke="black" stroke-width="2"/>')
    if q is not None:
        body.extend(_cross(frame, c) for c in q.centers)
    return _document(frame, body, _escape(title))


def render_points(dist: DiscreteUniform, q: Quantizer | None = None, title: str = "cvtq") -> str:
    """Points colored by nearest center, Voronoi cells clipped to a padded box, crosses at centers."""
    pts = dist.array
    allp = pts if q is None else np.vstack([pts, q.array])
    lo = allp.min(axis=0)
    hi = allp.max(axis=0)
    margin = 0.1 * max(float(np.max(hi - lo)), 1.0)
    box = (lo[0] - margin, lo[1] - margin, hi[0] + margin, hi[1] + margin)
    frame = _Frame(box)
    body = []
    labels = np.zeros(len(pts), dtype=int)
    if q is not None:
        labels = assign(dist, q)
        rect = np.array([[box[0], box[1]], [box[2], box[1]], [box[2], box[3]], [box[0], box[3]]])
        for i in range(len(q)):
            v = rect
            for h in cell_halfplanes(q.centers, i):
                v = geom.clip_vertices(v, h)
                if len(v) < 3:
                    break
            if len(v) >= 3:
                body.append(f'<polygon class="cell" points="{frame.pts(v)}" fill="none" '
                            'stroke="#444" stroke-width="1" stroke-dasharray="4 3"/>')
    for p, k in zip(pts, labels):
        x, y = frame(p)
        body.append(f'<circle class="point" cx="{x:.4f}" cy="{y:.4f}" r="4" '
                    f'fill="{PALETTE[int(k) % len(PALETTE)]}"/>')
    if q is not None:
        body.extend(_cross(frame, c) for c in q.centers)
    return _document(frame, body, _escape(title))


def _escape(s: str) -> str:
    return quoteattr(s)[1:-1]
