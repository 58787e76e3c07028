"""Voronoi partitions of a convex region and the centroidal (CVT) test."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .geom import HalfPlane, Point, as_point
from .region import MassProfile, Region, profile_of

MIN_SEPARATION = 1e-9


@dataclass(frozen=True)
class Quantizer:
    """An ordered set of distinct centers."""

    centers: tuple

    def __post_init__(self):
        cs = tuple(as_point(c) for c in self.centers)
        if not cs:
            raise InvalidInputError("a quantizer needs at least one center")
        arr = np.array([tuple(c) for c in cs])
        if len(cs) > 1:
            d = np.sqrt(((arr[:, None, :] - arr[None, :, :]) ** 2).sum(-1))
            d[np.diag_indices(len(cs))] = np.inf
            if d.min() <= MIN_SEPARATION:
                raise InvalidInputError("quantizer centers must be pairwise distinct")
        object.__setattr__(self, "centers", cs)

    def __len__(self) -> int:
        return len(self.centers)

    def __iter__(self):
        return iter(self.centers)

    def __getitem__(self, i) -> Point:
        return self.centers[i]

    @property
    def array(self) -> np.ndarray:
        return np.array([tuple(c) for c in self.centers], dtype=float)

    def canonical(self) -> Quantizer:
        return Quantizer(tuple(sorted(self.centers, key=lambda c: (c.x1, c.x2))))

    def close_to(self, other: Quantizer, tol: float = 1e-9) -> bool:
        """Same set of centers (order ignored), per-coordinate tolerance."""
        if len(self) != len(other):
            return False
        a = self.array
        b = other.array
        used = set()
        for p in a:
            hit = next((j for j in range(len(b)) if j not in used
                        and np.max(np.abs(b[j] - p)) <= tol), None)
            if hit is None:
                return False
            used.add(hit)
        return True

    def as_lists(self):
        return [[c.x1, c.x2] for c in self.canonical().centers]


def nearest_index(pts: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Index of the nearest center for every point; ties go to the lowest index."""
    d = ((pts[:, None, :] - centers[None, :, :]) ** 2).sum(-1)
    return np.argmin(d, axis=1)


_EMPTY = MassProfile(0.0, Point(0.0, 0.0), (0.0, 0.0, 0.0))


@dataclass(frozen=True)
class VoronoiCell:
    generator_index: int
    geometry: object  # shape piece, or None when the cell has no area
    mass_profile: MassProfile

    @property
    def is_empty(self) -> bool:
        return self.geometry is None or self.mass_profile.mass <= 0.0


def cell_halfplanes(centers, i: int):
    ci = centers[i]
    return [HalfPlane.bisector(ci, cj) for j, cj in enumerate(centers) if j != i]


def voronoi_partition(region: Region, q: Quantizer) -> list[VoronoiCell]:
    """One cell per generator: the region cut by its bisector half-planes."""
    if not region.shape.is_convex:
        raise InvalidInputError("Voronoi partitioning needs a convex region")
    cells = []
    for i in range(len(q)):
        piece = region.shape.clipped(cell_halfplanes(q.centers, i))
        if piece is None:
            cells.append(VoronoiCell(i, None, _EMPTY))
            continue
        prof = profile_of(piece, region.density)
        if prof.mass <= 0.0:
            cells.append(VoronoiCell(i, None, _EMPTY))
        else:
            cells.append(VoronoiCell(i, piece, prof))
    return cells


@dataclass(frozen=True)
class CVTReport:
    ok: bool
    deviations: tuple  # distance of each generator from its cell's center of mass
    empty_cells: tuple

    def __bool__(self) -> bool:
        return self.ok

    @property
    def max_deviation(self) -> float:
        return max(self.deviations)


def is_cvt(region: Region, q: Quantizer, tol: float = 1e-8) -> CVTReport:
    if not tol > 0:
        raise InvalidInputError("tol must be positive")
    cells = voronoi_partition(region, q)
    dev = []
    empty = []
    for cell, c in zip(cells, q.centers):
        if cell.is_empty:
            empty.append(cell.generator_index)
            dev.append(math.inf)
        else:
            dev.append((cell.mass_profile.center - c).norm())
    ok = not empty and max(dev) <= tol
    return CVTReport(ok, tuple(dev), tuple(empty))
