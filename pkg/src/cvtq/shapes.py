"""Region shapes and their half-plane restrictions.

Every shape answers the same question: the raw monomial integrals
``int x1**p * x2**q dA`` over itself, for all p + q up to some degree.
Voronoi cells are produced by restricting a shape to a list of half-planes,
so one moment routine serves whole regions and cells alike.

* ``PolygonShape``: exact fan-triangulation rules.
* ``DiscShape``: disc intersected with half-planes, split into a chord
  polygon plus circular segments with closed-form moments up to degree 2.
* ``CurveShape``: ``{a <= x1 <= b, g(x1) <= x2 <= f(x1)}`` intersected with
  half-planes; the x2-integral is closed form, the x1-integral adaptive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate

from . import geom
from .errors import InvalidInputError
from .geom import ConvexPolygon

QUAD_TOL = 1e-10
QUAD_MAX_EVAL = 10**6


@dataclass(frozen=True)
class RawMoments:
    """Monomial integrals keyed by exponent pair."""

    values: dict
    method: str
    error: float = 0.0

    def __getitem__(self, pq):
        return self.values[pq]


def _exponents(degree: int):
    return [(p, d - p) for d in range(degree + 1) for p in range(d, -1, -1)]


class PolygonShape:
    kind = "polygon"

    def __init__(self, polygon: ConvexPolygon):
        self.polygon = polygon

    def __repr__(self):
        return f"PolygonShape({self.polygon!r})"

    def clipped(self, halfplanes) -> PolygonShape | None:
        out = geom.clip_many(self.polygon, halfplanes)
        return None if out is None else PolygonShape(out)

    def moments(self, degree: int) -> RawMoments:
        v = self.polygon.array
        vals = {pq: geom.moment_any_degree(v, *pq) for pq in _exponents(degree)}
        return RawMoments(vals, "exact-polygon", 0.0)

    def contains(self, pts) -> np.ndarray:
        return self.polygon.contains(pts)

    def bbox(self):
        return self.polygon.bbox()

    @property
    def is_convex(self) -> bool:
        return True

    def transformed(self, matrix, shift) -> PolygonShape:
        return PolygonShape(self.polygon.transformed(matrix, shift))


# -- circular segments ------------------------------------------------------

def segment_local_moments(r: float, phi: float):
    """Area, axial first moment and the two second moments of a segment.

    The segment is the part of a radius-``r`` disc beyond a chord at axial
    distance ``r cos(phi)`` from the center (half-angle ``phi`` in [0, pi]).
    Returned in the segment frame (s along the symmetry axis, t across):
    ``(A, int s, int s^2, int t^2)``; ``int t`` and ``int s t`` vanish.
    """
    s, c = math.sin(phi), math.cos(phi)
    area = r * r * (phi - s * c)
    first = 2.0 / 3.0 * r**3 * s**3
    r4 = r**4 / 4.0
    iss = r4 * (phi + s * c - 2.0 * c**3 * s)
    itt = r4 * (phi - s * c - 2.0 / 3.0 * c * s**3)
    return area, first, iss, itt


def _segment_moments_analytic(center, r, theta_mid, phi) -> dict:
    cx, cy = center
    ux, uy = math.cos(theta_mid), math.sin(theta_mid)
    vx, vy = -uy, ux
    a, s1, iss, itt = segment_local_moments(r, phi)
    return {
        (0, 0): a,
        (1, 0): cx * a + ux * s1,
        (0, 1): cy * a + uy * s1,
        (2, 0): cx * cx * a + 2 * cx * ux * s1 + ux * ux * iss + vx * vx * itt,
        (1, 1): cx * cy * a + (cx * uy + cy * ux) * s1 + ux * uy * iss + vx * vy * itt,
        (0, 2): cy * cy * a + 2 * cy * uy * s1 + uy * uy * iss + vy * vy * itt,
    }


def _segment_moments_quadrature(center, r, theta_mid, phi, degree):
    """Any-degree segment moments: exact across the chord, adaptive along it."""
    cx, cy = center
    ux, uy = math.cos(theta_mid), math.sin(theta_mid)
    vx, vy = -uy, ux
    exps = _exponents(degree)
    gx, gw = np.polynomial.legendre.leggauss(degree // 2 + 2)

    def integrand(th):
        s = r * math.cos(th)
        w = r * math.sin(th)
        t = w * gx
        x = cx + s * ux + t * vx
        y = cy + s * uy + t * vy
        jac = r * math.sin(th) * w
        return np.array([jac * np.dot(gw, x**p * y**q) for p, q in exps])

    vals, err = integrate.quad_vec(integrand, 0.0, phi, epsabs=QUAD_TOL * 1e-2,
                                   epsrel=1e-13, limit=QUAD_MAX_EVAL // 21)
    return dict(zip(exps, vals)), float(err)


class DiscShape:
    """Disc, optionally restricted to a list of half-planes."""

    kind = "disc"

    def __init__(self, center, radius: float, halfplanes=()):
        self.center = geom.as_point(center)
        self.radius = float(radius)
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise InvalidInputError("disc radius must be positive")
        self.halfplanes = tuple(halfplanes)
        self._layout = None

    def __repr__(self):
        return f"DiscShape(center={tuple(self.center)}, radius={self.radius}, cuts={len(self.halfplanes)})"

    @property
    def is_convex(self) -> bool:
        return True

    def bbox(self):
        cx, cy = self.center
        r = self.radius
        return cx - r, cy - r, cx + r, cy + r

    def contains(self, pts) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        c = np.array(tuple(self.center))
        ok = np.sum((pts - c) ** 2, axis=1) <= self.radius**2 * (1 + 1e-12)
        for h in self.halfplanes:
            ok &= h.signed_distance(pts) <= 1e-12
        return ok

    def clipped(self, halfplanes) -> DiscShape | None:
        out = DiscShape(self.center, self.radius, self.halfplanes + tuple(halfplanes))
        return None if out.layout()[0] == "empty" else out

    def transformed(self, matrix, shift) -> DiscShape:
        m = np.asarray(matrix, dtype=float)
        sx = math.sqrt(abs(np.linalg.det(m)))
        if self.halfplanes:
            raise InvalidInputError("only whole discs can be transformed")
        c = m @ np.array(tuple(self.center)) + np.asarray(shift, dtype=float)
        return DiscShape(c, self.radius * sx)

    def layout(self):
        """``(status, chord_vertices, arcs)``; arcs are ccw ``(theta0, theta1)``.

        status is ``"empty"``, ``"full"`` or ``"cut"``.
        """
        if self._layout is None:
            self._layout = self._compute_layout()
        return self._layout

    def _compute_layout(self):
        c = np.array(tuple(self.center))
        r = self.radius
        box = c + 2.0 * r * np.array([[-1, -1], [1, -1], [1, 1], [-1, 1]], dtype=float)
        v = box
        for h in self.halfplanes:
            v = geom.clip_vertices(v, h)
            if len(v) < 3:
                return ("empty", None, ())
        pieces = []
        k = len(v)
        for i in range(k):
            p, q = v[i], v[(i + 1) % k]
            e = q - p
            aa = float(e @ e)
            if aa == 0.0:
                continue
            w = p - c
            bb = 2.0 * float(e @ w)
            cc = float(w @ w) - r * r
            disc = bb * bb - 4 * aa * cc
            if disc <= 0:
                continue
            sq = math.sqrt(disc)
            t0 = (-bb - sq) / (2 * aa)
            t1 = (-bb + sq) / (2 * aa)
            lo, hi = max(t0, 0.0), min(t1, 1.0)
            if (hi - lo) * math.sqrt(aa) <= 1e-13 * r:
                continue
            pieces.append((p + lo * e, p + hi * e))
        if not pieces:
            inside = all(float(h.signed_distance(c)) <= 0 for h in self.halfplanes)
            return ("full", None, ()) if inside else ("empty", None, ())

        tol = 1e-12 * r
        chord = []
        arcs = []
        m = len(pieces)
        for i, (s, e) in enumerate(pieces):
            if not chord or np.max(np.abs(chord[-1] - s)) > tol:
                chord.append(s)
            chord.append(e)
            nxt = pieces[(i + 1) % m][0]
            if np.max(np.abs(e - nxt)) > tol or m == 1:
                t0 = math.atan2(e[1] - c[1], e[0] - c[0])
                t1 = math.atan2(nxt[1] - c[1], nxt[0] - c[0])
                arcs.append((t0, t1))
        if len(chord) > 1 and np.max(np.abs(chord[0] - chord[-1])) <= tol:
            chord.pop()
        chord = np.array(chord)
        if not arcs and len(chord) >= 3 and abs(geom._signed_area(chord)) < geom.GEOM_TOL:
            return ("empty", None, ())
        return ("cut", chord, tuple(arcs))

    def moments(self, degree: int) -> RawMoments:
        status, chord, arcs = self.layout()
        exps = _exponents(degree)
        c = tuple(self.center)
        r = self.radius
        if status == "empty":
            return RawMoments({pq: 0.0 for pq in exps}, "segment-analytic", 0.0)
        if status == "full":
            segs = [(0.0, math.pi)]
        else:
            segs = []
            for t0, t1 in arcs:
                span = (t1 - t0) % (2 * math.pi)
                if span == 0.0:
                    span = 2 * math.pi
                segs.append((t0 + 0.5 * span, 0.5 * span))
        vals = {pq: 0.0 for pq in exps}
        if chord is not None:
            for pq in exps:
                vals[pq] += geom.moment_any_degree(chord, *pq)
        err = 0.0
        method = "segment-analytic"
        for mid, phi in segs:
            if degree <= 2:
                part = _segment_moments_analytic(c, r, mid, phi)
            else:
                part, e = _segment_moments_quadrature(c, r, mid, phi, degree)
                err += e
                method = "quadrature"
            for pq in exps:
                vals[pq] += part[pq]
        return RawMoments(vals, method, err)


# -- curve-bounded ----------------------------------------------------------

def _vertical_extent(edges, x: float):
    """Interval of a convex loop on the vertical line at ``x``; ``edges`` from ``_edges``."""
    lo = math.inf
    hi = -math.inf
    for x0, y0, x1, y1 in edges:
        if min(x0, x1) <= x <= max(x0, x1):
            y = y0 + (x - x0) / (x1 - x0) * (y1 - y0)
            lo = min(lo, y)
            hi = max(hi, y)
    return None if lo > hi else (lo, hi)


def _edges(v: np.ndarray):
    """Non-vertical edges as plain float tuples (scalar loops beat numpy here)."""
    w = np.roll(v, -1, axis=0)
    return [(float(a[0]), float(a[1]), float(b[0]), float(b[1])) for a, b in zip(v, w) if a[0] != b[0]]


@dataclass(frozen=True)
class CurveShape:
    """``{a <= x1 <= b, g(x1) <= x2 <= f(x1)}``, optionally cut by half-planes."""

    f: Callable[[float], float]
    g: Callable[[float], float]
    a: float
    b: float
    halfplanes: tuple = ()
    name: str | None = field(default=None, compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    kind = "curve"

    def __post_init__(self):
        if not self.a < self.b:
            raise InvalidInputError("curve-bounded region needs a < b")
        xs = np.linspace(self.a, self.b, 1001)
        fv, gv = self._fg(xs)
        if np.any(fv < gv - 1e-12):
            raise InvalidInputError("upper curve f lies below g somewhere on [a, b]")

    def _fg(self, xs):
        fv = np.array([self.f(x) for x in np.atleast_1d(xs)], dtype=float)
        gv = np.array([self.g(x) for x in np.atleast_1d(xs)], dtype=float)
        return fv, gv

    @property
    def is_convex(self) -> bool:
        """Sampled check: f concave and g convex on a 1001-point grid."""
        if "convex" not in self._cache:
            xs = np.linspace(self.a, self.b, 1001)
            fv, gv = self._fg(xs)
            scale = max(1.0, float(np.max(np.abs(fv))), float(np.max(np.abs(gv))))
            tol = 1e-9 * scale
            d2f = fv[:-2] - 2 * fv[1:-1] + fv[2:]
            d2g = gv[:-2] - 2 * gv[1:-1] + gv[2:]
            self._cache["convex"] = bool(np.all(d2f <= tol) and np.all(d2g >= -tol))
        return self._cache["convex"]

    def bbox(self):
        if "bbox" not in self._cache:
            xs = np.linspace(self.a, self.b, 1001)
            fv, gv = self._fg(xs)
            self._cache["bbox"] = (self.a, float(gv.min()), self.b, float(fv.max()))
        return self._cache["bbox"]

    def _box(self) -> np.ndarray:
        x0, y0, x1, y1 = self.bbox()
        pad = 1.0 + (y1 - y0) + (x1 - x0)
        return np.array([[x0, y0 - pad], [x1, y0 - pad], [x1, y1 + pad], [x0, y1 + pad]], dtype=float)

    def _cut_loop(self):
        v = self._box()
        for h in self.halfplanes:
            v = geom.clip_vertices(v, h)
            if len(v) < 3:
                return None
        return v

    def contains(self, pts) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        x, y = pts[:, 0], pts[:, 1]
        ok = (x >= self.a) & (x <= self.b)
        xc = np.clip(x, self.a, self.b)
        fv, gv = self._fg(xc)
        ok &= (y <= fv + 1e-12) & (y >= gv - 1e-12)
        for h in self.halfplanes:
            ok &= h.signed_distance(pts) <= 1e-12
        return ok

    def clipped(self, halfplanes) -> CurveShape | None:
        out = CurveShape(self.f, self.g, self.a, self.b, self.halfplanes + tuple(halfplanes), self.name)
        out._cache["bbox"] = self.bbox()
        if out._cut_loop() is None or out.moments(0)[(0, 0)] <= geom.GEOM_TOL:
            return None
        return out

    def transformed(self, matrix, shift):
        raise InvalidInputError("curve-bounded shapes cannot be transformed")

    def moments(self, degree: int) -> RawMoments:
        exps = _exponents(degree)
        for d, raw in self._cache.get("moments", {}).items():
            if d >= degree:
                return RawMoments({pq: raw[pq] for pq in exps}, raw.method, raw.error)
        out = self._moments(max(degree, 2))
        self._cache.setdefault("moments", {})[max(degree, 2)] = out
        return self.moments(degree)

    def _moments(self, degree: int) -> RawMoments:
        exps = _exponents(degree)
        v = self._cut_loop()
        if v is None:
            return RawMoments({pq: 0.0 for pq in exps}, "quadrature", 0.0)
        lo = max(self.a, float(v[:, 0].min()))
        hi = min(self.b, float(v[:, 0].max()))
        if hi <= lo:
            return RawMoments({pq: 0.0 for pq in exps}, "quadrature", 0.0)
        zero = np.zeros(len(exps))
        px = np.array([p for p, _ in exps])
        qy = np.array([q for _, q in exps])

        edges = _edges(v)

        def integrand(x):
            ext = _vertical_extent(edges, x)
            if ext is None:
                return zero
            y0 = max(self.g(x), ext[0])
            y1 = min(self.f(x), ext[1])
            if y1 <= y0:
                return zero
            return x**px * (y1 ** (qy + 1) - y0 ** (qy + 1)) / (qy + 1)

        brk = sorted({float(x) for x in v[:, 0] if lo < x < hi})
        vals, err = integrate.quad_vec(integrand, lo, hi, epsabs=QUAD_TOL * 1e-2, epsrel=1e-13,
                                       points=brk or None, limit=QUAD_MAX_EVAL // 21)
        return RawMoments(dict(zip(exps, (float(x) for x in vals))), "quadrature", float(err))
