"""Laminas: a shape carrying a mass density, and their centers of mass.

For a uniform density the expected vector of the normalized distribution
coincides with the geometric centroid; for other densities it generally
does not (e.g. ``4 x1 x2`` on the unit square has mean (2/3, 2/3)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import DegenerateGeometryError, InvalidInputError
from .geom import ConvexPolygon, Point
from .shapes import QUAD_MAX_EVAL, QUAD_TOL, CurveShape, DiscShape, PolygonShape

NONNEG_SAMPLES = 10_000


@dataclass(frozen=True)
class Density:
    """Uniform, or a bivariate polynomial ``sum c * x1**px * x2**py``.

    Uniform densities keep their constant as a single ``(value, 0, 0)`` term.
    """

    kind: str = "uniform"
    terms: tuple = ((1.0, 0, 0),)

    def __post_init__(self):
        if self.kind not in ("uniform", "polynomial"):
            raise InvalidInputError(f"unknown density kind {self.kind!r}")
        terms = tuple((float(c), int(p), int(q)) for c, p, q in self.terms)
        if not terms:
            raise InvalidInputError("density needs at least one term")
        for c, p, q in terms:
            if p < 0 or q < 0 or not math.isfinite(c):
                raise InvalidInputError(f"bad density term {(c, p, q)}")
        if self.kind == "uniform" and (len(terms) != 1 or terms[0][1:] != (0, 0) or terms[0][0] <= 0):
            raise InvalidInputError("uniform density is one positive constant")
        if max(p + q for _, p, q in terms) > 2:
            raise InvalidInputError("polynomial densities are limited to total degree 2")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def uniform(cls, value: float = 1.0) -> Density:
        return cls("uniform", ((value, 0, 0),))

    @classmethod
    def polynomial(cls, terms) -> Density:
        return cls("polynomial", tuple(terms))

    @property
    def is_uniform(self) -> bool:
        return self.kind == "uniform" or all(p == 0 and q == 0 for _, p, q in self.terms)

    @property
    def degree(self) -> int:
        return max(p + q for _, p, q in self.terms)

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for c, p, q in self.terms:
            out = out + c * x**p * y**q
        return out


@dataclass(frozen=True)
class MassProfile:
    """Mass and raw first/second moments of a density over a piece."""

    mass: float
    first_moments: Point
    second_moments: tuple
    method: str = "exact-polygon"
    estimated_error: float = 0.0

    @property
    def center(self) -> Point:
        return self.first_moments / self.mass

    @property
    def variance(self) -> float:
        """Mean squared distance to the center of mass (V1 of the piece)."""
        m20, _, m02 = self.second_moments
        c = self.center
        return (m20 + m02) / self.mass - c.dot(c)

    def cost(self, c: Point) -> float:
        """Unnormalized ``int |x - c|^2 density dA`` over the piece."""
        m20, _, m02 = self.second_moments
        m = self.first_moments
        return m20 + m02 - 2.0 * c.dot(m) + c.dot(c) * self.mass


def profile_of(shape, density: Density) -> MassProfile:
    deg = density.degree + 2
    raw = shape.moments(deg)

    def w(px, py):
        return sum(c * raw[(px + p, py + q)] for c, p, q in density.terms)

    return MassProfile(
        mass=w(0, 0),
        first_moments=Point(w(1, 0), w(0, 1)),
        second_moments=(w(2, 0), w(1, 1), w(0, 2)),
        method=raw.method,
        estimated_error=raw.error,
    )


@dataclass(frozen=True, eq=False)
class Region:
    """A convex shape with a density; ``shape`` is a polygon, disc or curve-bounded piece."""

    shape: PolygonShape | DiscShape | CurveShape
    density: Density = Density()
    name: str | None = None

    def __post_init__(self):
        prof = profile_of(self.shape, self.density)
        if not prof.mass > 0:
            raise DegenerateGeometryError("region has no positive mass")
        if not self.density.is_uniform:
            pts = self.sample(NONNEG_SAMPLES, np.random.default_rng(0))
            if np.any(self.density(pts[:, 0], pts[:, 1]) < 0):
                raise InvalidInputError("density is negative somewhere in the region")

    @classmethod
    def polygon(cls, vertices, density: Density | None = None, name=None) -> Region:
        return cls(PolygonShape(ConvexPolygon(vertices)), density or Density(), name)

    @classmethod
    def disc(cls, center=(0.0, 0.0), radius: float = 1.0, density: Density | None = None, name=None) -> Region:
        return cls(DiscShape(center, radius), density or Density(), name)

    @classmethod
    def curve_bounded(cls, f: Callable, g: Callable, a: float, b: float,
                      density: Density | None = None, name=None) -> Region:
        return cls(CurveShape(f, g, float(a), float(b), name=name), density or Density(), name)

    @property
    def kind(self) -> str:
        return self.shape.kind

    def bbox(self):
        return self.shape.bbox()

    def contains(self, pts) -> np.ndarray:
        return self.shape.contains(pts)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """``n`` points uniform over the shape, by rejection from the bounding box."""
        x0, y0, x1, y1 = self.bbox()
        out = []
        got = 0
        while got < n:
            batch = rng.uniform((x0, y0), (x1, y1), size=(max(64, 2 * (n - got)), 2))
            batch = batch[self.contains(batch)]
            out.append(batch)
            got += len(batch)
        return np.concatenate(out)[:n]

    def transformed(self, matrix, shift=(0.0, 0.0)) -> Region:
        return Region(self.shape.transformed(matrix, shift), self.density, self.name)


def centroid_between_curves(f: Callable, g: Callable, a: float, b: float, points=None) -> Point:
    """Centroid of the uniform lamina between ``x2 = g(x1)`` and ``x2 = f(x1)`` on [a, b].

    Uses the one-dimensional formulas directly:
    ``x1 = int x (f - g) / A`` and ``x2 = int (f^2 - g^2) / 2 / A``.
    ``points`` lists abscissae where f or g has a kink.
    """
    brk = sorted(float(x) for x in points if a < x < b) if points is not None else None
    opts = dict(epsabs=QUAD_TOL * 1e-2, epsrel=1e-13, limit=QUAD_MAX_EVAL // 21, points=brk or None)
    area = integrate.quad(lambda x: f(x) - g(x), a, b, **opts)[0]
    if not area > 0:
        raise DegenerateGeometryError(f"area between curves is {area}")
    mx = integrate.quad(lambda x: x * (f(x) - g(x)), a, b, **opts)[0]
    my = integrate.quad(lambda x: 0.5 * (f(x) ** 2 - g(x) ** 2), a, b, **opts)[0]
    return Point(mx / area, my / area)


def mass_profile(region: Region) -> MassProfile:
    return profile_of(region.shape, region.density)


def expected_vector(region: Region) -> Point:
    """Mean of the normalized density over the region."""
    return mass_profile(region).center


def shape_centroid(region: Region) -> Point:
    """Geometric centroid, ignoring the density."""
    return profile_of(region.shape, Density()).center
