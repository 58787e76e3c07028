"""Exact planar primitives: points, half-planes, convex polygons.

Polygon moments of total degree <= 2 use a fan triangulation from vertex 0
and the three-edge-midpoint rule on each triangle, which integrates every
quadratic exactly. Higher degrees go through a collapsed Gauss-Legendre
rule sized to the requested degree, which is also exact for polynomials.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import DegenerateGeometryError, InvalidInputError, UnsupportedDegreeError

GEOM_TOL = 1e-12


@dataclass(frozen=True)
class Point:
    x1: float
    x2: float

    def __post_init__(self):
        x1, x2 = float(self.x1), float(self.x2)
        if not (math.isfinite(x1) and math.isfinite(x2)):
            raise InvalidInputError(f"non-finite coordinate in ({x1}, {x2})")
        object.__setattr__(self, "x1", x1)
        object.__setattr__(self, "x2", x2)

    def __iter__(self):
        yield self.x1
        yield self.x2

    def __add__(self, other: Point) -> Point:
        return Point(self.x1 + other.x1, self.x2 + other.x2)

    def __sub__(self, other: Point) -> Point:
        return Point(self.x1 - other.x1, self.x2 - other.x2)

    def __mul__(self, s: float) -> Point:
        return Point(self.x1 * s, self.x2 * s)

    __rmul__ = __mul__

    def __truediv__(self, s: float) -> Point:
        return Point(self.x1 / s, self.x2 / s)

    def dot(self, other: Point) -> float:
        return self.x1 * other.x1 + self.x2 * other.x2

    def norm(self) -> float:
        return math.hypot(self.x1, self.x2)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x1, self.x2)


def as_point(p) -> Point:
    if isinstance(p, Point):
        return p
    x1, x2 = p
    return Point(x1, x2)


def sq_dist(a: Point, b: Point) -> float:
    """Squared Euclidean distance."""
    d1 = a.x1 - b.x1
    d2 = a.x2 - b.x2
    return d1 * d1 + d2 * d2


@dataclass(frozen=True)
class HalfPlane:
    """The closed set ``{x : normal . x <= offset}``."""

    normal: Point
    offset: float

    def __post_init__(self):
        object.__setattr__(self, "normal", as_point(self.normal))
        object.__setattr__(self, "offset", float(self.offset))
        if self.normal.norm() <= 0.0:
            raise InvalidInputError("half-plane normal must be non-zero")

    @classmethod
    def bisector(cls, a: Point, b: Point) -> HalfPlane:
        """Points at least as close to ``a`` as to ``b``."""
        n = b - a
        return cls(n, 0.5 * (b.dot(b) - a.dot(a)))

    def complement(self) -> HalfPlane:
        return HalfPlane(self.normal * -1.0, -self.offset)

    def signed_distance(self, pts: np.ndarray) -> np.ndarray:
        """Positive outside, negative inside; scaled by |normal|."""
        pts = np.asarray(pts, dtype=float)
        n = self.normal
        return (pts[..., 0] * n.x1 + pts[..., 1] * n.x2 - self.offset) / n.norm()


def _signed_area(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _canonical(vertices, check_convex: bool) -> np.ndarray:
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2:
        raise InvalidInputError("vertices must be a sequence of (x, y) pairs")
    if not np.all(np.isfinite(v)):
        raise InvalidInputError("non-finite vertex coordinate")
    scale = max(1.0, float(np.max(np.abs(v))) if len(v) else 1.0)
    tol = GEOM_TOL * scale

    # repeated vertices, including wrap-around
    keep = []
    for p in v:
        if keep and np.max(np.abs(p - keep[-1])) <= tol:
            continue
        keep.append(p)
    while len(keep) > 1 and np.max(np.abs(keep[0] - keep[-1])) <= tol:
        keep.pop()
    if len(keep) < 3:
        raise DegenerateGeometryError("polygon needs at least 3 distinct vertices")
    v = np.array(keep)

    area = _signed_area(v)
    if abs(area) < GEOM_TOL:
        raise DegenerateGeometryError(f"polygon area {abs(area):.3e} below tolerance")
    if area < 0:
        v = v[::-1].copy()

    # drop collinear (and, for clip output, numerically reflex) vertices
    changed = True
    while changed and len(v) >= 3:
        changed = False
        k = len(v)
        for i in range(k):
            a, b, c = v[i - 1], v[i], v[(i + 1) % k]
            e1, e2 = b - a, c - b
            cross = e1[0] * e2[1] - e1[1] * e2[0]
            lim = GEOM_TOL * float(np.hypot(*e1) * np.hypot(*e2))
            if cross <= lim:
                if check_convex and cross < -lim:
                    raise InvalidInputError("polygon is not convex")
                v = np.delete(v, i, axis=0)
                changed = True
                break
    if len(v) < 3 or _signed_area(v) < GEOM_TOL:
        raise DegenerateGeometryError("polygon collapses after removing collinear vertices")

    # start at the lexicographically smallest vertex
    start = min(range(len(v)), key=lambda i: (v[i, 0], v[i, 1]))
    return np.roll(v, -start, axis=0)


class ConvexPolygon:
    """Counterclockwise, strictly convex polygon with at least 3 vertices.

    Construction canonicalizes the input: orientation is made
    counterclockwise, repeated and collinear vertices are removed and the
    vertex list starts at the lexicographically smallest vertex.
    """

    __slots__ = ("_v",)

    def __init__(self, vertices, *, _trusted: bool = False):
        v = _canonical(vertices, check_convex=not _trusted)
        v.setflags(write=False)
        self._v = v

    @property
    def vertices(self) -> tuple[Point, ...]:
        return tuple(Point(x, y) for x, y in self._v)

    @property
    def array(self) -> np.ndarray:
        return self._v

    def __len__(self) -> int:
        return len(self._v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConvexPolygon) or len(other) != len(self):
            return NotImplemented if not isinstance(other, ConvexPolygon) else False
        return bool(np.allclose(self._v, other._v, rtol=0.0, atol=1e-9))

    def __hash__(self):
        return hash(tuple(np.round(self._v, 9).ravel()))

    def __repr__(self) -> str:
        pts = ", ".join(f"({x:.6g}, {y:.6g})" for x, y in self._v)
        return f"ConvexPolygon([{pts}])"

    def contains(self, pts, tol: float = 1e-12) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        v = self._v
        e = np.roll(v, -1, axis=0) - v
        rel = pts[:, None, :] - v[None, :, :]
        cross = e[None, :, 0] * rel[..., 1] - e[None, :, 1] * rel[..., 0]
        return np.all(cross >= -tol * np.hypot(e[:, 0], e[:, 1])[None, :], axis=1)

    def bbox(self) -> tuple[float, float, float, float]:
        lo = self._v.min(axis=0)
        hi = self._v.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    def transformed(self, matrix, shift=(0.0, 0.0)) -> ConvexPolygon:
        m = np.asarray(matrix, dtype=float)
        v = self._v @ m.T + np.asarray(shift, dtype=float)
        if np.linalg.det(m) < 0:
            v = v[::-1]
        return ConvexPolygon(v, _trusted=True)


def _fan(v: np.ndarray):
    """Triangles (v0, vi, vi+1) with their (positive) areas."""
    a = v[0]
    b = v[1:-1]
    c = v[2:]
    area = 0.5 * ((b[:, 0] - a[0]) * (c[:, 1] - a[1]) - (b[:, 1] - a[1]) * (c[:, 0] - a[0]))
    return a, b, c, area


def _moment_midpoint(v: np.ndarray, px: int, py: int) -> float:
    a, b, c, area = _fan(v)
    total = np.zeros_like(area)
    for p, q in ((a, b), (b, c), (c, a)):
        m = 0.5 * (p + q)
        total += m[..., 0] ** px * m[..., 1] ** py
    return float(np.sum(area * total) / 3.0)


@lru_cache(maxsize=None)
def _collapsed_rule(k: int):
    x, w = np.polynomial.legendre.leggauss(k)
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    u, s = np.meshgrid(x, x, indexing="ij")
    wu, ws = np.meshgrid(w, w, indexing="ij")
    # triangle (0,0),(1,0),(1,1) reference via (u, u*s); Jacobian u
    return u.ravel(), (u * s).ravel(), (wu * ws * u).ravel()


def moment_any_degree(vertices: np.ndarray, px: int, py: int) -> float:
    """Exact integral of x1**px * x2**py over a convex vertex loop.

    Accepts degenerate loops (fewer than 3 vertices contributes 0).
    """
    v = np.asarray(vertices, dtype=float)
    if len(v) < 3:
        return 0.0
    if px + py <= 2:
        return _moment_midpoint(v, px, py)
    k = (px + py) // 2 + 2
    r, s, w = _collapsed_rule(k)
    a, b, c, area = _fan(v)
    # reference (r, s) -> a + r (b - a) + s (c - b); reference area 1/2
    pts = (a[None, None, :]
           + r[None, :, None] * (b - a)[:, None, :]
           + s[None, :, None] * (c - b)[:, None, :])
    f = pts[..., 0] ** px * pts[..., 1] ** py
    return float(np.sum(2.0 * area[:, None] * w[None, :] * f))


def polygon_area(poly: ConvexPolygon) -> float:
    """Shoelace area."""
    area = _signed_area(poly.array)
    if area < GEOM_TOL:
        raise DegenerateGeometryError("degenerate polygon")
    return area


def polygon_moment(poly: ConvexPolygon, px: int, py: int) -> float:
    """Integral of ``x1**px * x2**py`` over the polygon, for px + py <= 2."""
    if px < 0 or py < 0:
        raise InvalidInputError("moment exponents must be non-negative")
    if px + py > 2:
        raise UnsupportedDegreeError(f"degree {px + py} exceeds the closed-form range (<= 2)")
    if px == 0 and py == 0:
        return polygon_area(poly)
    return _moment_midpoint(poly.array, px, py)


def polygon_centroid(poly: ConvexPolygon) -> Point:
    area = polygon_area(poly)
    return Point(polygon_moment(poly, 1, 0) / area, polygon_moment(poly, 0, 1) / area)


def clip_vertices(v: np.ndarray, h: HalfPlane) -> np.ndarray:
    """Sutherland-Hodgman against one half-plane on a raw vertex loop."""
    if len(v) == 0:
        return v
    d = v @ np.array([h.normal.x1, h.normal.x2]) - h.offset
    if np.all(d <= 0):
        return v
    if np.all(d > 0):
        return v[:0]
    out = []
    k = len(v)
    for i in range(k):
        j = (i + 1) % k
        si, sj = d[i], d[j]
        if si <= 0:
            out.append(v[i])
        if (si <= 0) != (sj <= 0):
            t = si / (si - sj)
            out.append(v[i] + t * (v[j] - v[i]))
    return np.array(out) if out else v[:0]


def clip_halfplane(poly: ConvexPolygon, h: HalfPlane) -> ConvexPolygon | None:
    """Intersection of ``poly`` with ``h``; None when the result has no area."""
    v = clip_vertices(poly.array, h)
    if v is poly.array:
        return poly
    if len(v) < 3 or abs(_signed_area(v)) < GEOM_TOL:
        return None
    try:
        return ConvexPolygon(v, _trusted=True)
    except DegenerateGeometryError:
        return None


def clip_many(poly: ConvexPolygon, halfplanes: Iterable[HalfPlane]) -> ConvexPolygon | None:
    out = poly
    for h in halfplanes:
        out = clip_halfplane(out, h)
        if out is None:
            return None
    return out
