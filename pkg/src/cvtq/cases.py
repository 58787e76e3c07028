"""Two-point CVTs with closed-form structure: disc, isosceles triangle, rhombus.

Each problem is posed as the condition that the dividing line between the
two pieces is the perpendicular bisector of the two centers of mass, and
solved numerically in the line's parameters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .cquant import distortion
from .errors import DomainError, InvalidInputError
from .geom import ConvexPolygon, HalfPlane, Point, clip_halfplane, polygon_area, polygon_centroid, sq_dist
from .region import Region
from .voronoi import Quantizer

SQRT2 = math.sqrt(2.0)

# -- disc -------------------------------------------------------------------


def disc_cap_centroids(a: float) -> tuple[float, float]:
    """Heights of the centers of mass above and below the chord from (-a, b) to (a, b)."""
    if not 0.0 < a <= 1.0:
        raise DomainError(f"chord half-length must lie in (0, 1], got {a}")
    root = math.sqrt(max(0.0, 1.0 - a * a))
    s = math.asin(a)
    upper = 2.0 * a**3 / (3.0 * (s - a * root))
    lower = -2.0 * a**3 / (3.0 * (a * root + s + 2.0 * math.acos(a)))
    return upper, lower


def disc_two_means_residual(a: float) -> float:
    """Midpoint height of the two centers minus the chord height ``sqrt(1 - a^2)``."""
    u2, v2 = disc_cap_centroids(a)
    return 0.5 * (u2 + v2) - math.sqrt(max(0.0, 1.0 - a * a))


@dataclass(frozen=True)
class DiscRootScan:
    roots: tuple
    sign_changes: int
    grid_points: int
    residual_at_one: float


def scan_disc_roots(grid: int = 10_000, tol: float = 1e-10) -> DiscRootScan:
    """Roots of the disc residual on (0, 1].

    Interior brackets found on a uniform grid are refined by bisection and
    polished with Newton; the endpoint a = 1 counts when its residual is
    below ``tol``.
    """
    xs = np.linspace(1.0 / grid, 1.0, grid)
    vals = np.array([disc_two_means_residual(x) for x in xs])
    roots = []
    changes = 0
    for i in range(grid - 1):
        if vals[i] == 0.0 or np.sign(vals[i]) == np.sign(vals[i + 1]) or vals[i + 1] == 0.0:
            continue
        changes += 1
        r = optimize.bisect(disc_two_means_residual, xs[i], xs[i + 1], xtol=1e-14)
        try:
            r = optimize.newton(disc_two_means_residual, r, tol=1e-15, maxiter=20)
        except RuntimeError:
            pass
        roots.append(float(r))
    end = disc_two_means_residual(1.0)
    if abs(end) <= tol:
        roots.append(1.0)
    return DiscRootScan(tuple(roots), changes, grid, end)


# -- shared solution record -------------------------------------------------


@dataclass(frozen=True)
class CaseSolution:
    case_id: object  # 1..6, "disc" or "golden"
    parameters: tuple  # (alpha, beta)
    centers: Quantizer
    distortion: float
    cut: tuple = ()  # the two points where the dividing line meets the boundary
    extra: dict = field(default_factory=dict)

    def bisector_residual(self) -> float:
        p, q = self.centers.centers
        return max(abs(sq_dist(p, x) - sq_dist(q, x)) for x in self.cut)


def disc_two_means_solve(grid: int = 10_000) -> CaseSolution:
    scan = scan_disc_roots(grid)
    if 1.0 not in scan.roots:
        raise RuntimeError("disc residual does not vanish at a = 1")
    u2, v2 = disc_cap_centroids(1.0)
    region = Region.disc()
    q = Quantizer([(0.0, u2), (0.0, v2)])
    return CaseSolution("disc", (1.0, 0.0), q, distortion(region, q).value,
                        cut=(Point(-1.0, 0.0), Point(1.0, 0.0)),
                        extra={"scan": scan})


# -- isosceles right triangle -----------------------------------------------

TRIANGLE = ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0))


def golden_centroids(alpha: float):
    """Centers of mass of corner triangle ACD and trapezoid OCDB, cut at AC = AD = alpha."""
    u = ((3.0 - alpha) / 3.0, alpha / 3.0)
    v = ((-alpha**2 + 2 * alpha + 2) / (3 * alpha + 3), (alpha**2 + alpha + 1) / (3 * alpha + 3))
    return u, v


def golden_residual(alpha: float) -> float:
    """Midpoint of the two centers measured against the cut line ``x2 = x1 - 1 + alpha``."""
    u, v = golden_centroids(alpha)
    return 0.5 * (u[1] + v[1]) - (0.5 * (u[0] + v[0]) - 1.0 + alpha)


def golden_partition_solve() -> CaseSolution:
    alpha = optimize.brentq(golden_residual, 1e-9, 1.0 - 1e-9, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    u, v = golden_centroids(alpha)
    tri = ConvexPolygon(TRIANGLE)
    # corner piece beyond the cut line x1 - x2 >= 1 - alpha
    corner = clip_halfplane(tri, HalfPlane((-1.0, 1.0), alpha - 1.0))
    rest = clip_halfplane(tri, HalfPlane((1.0, -1.0), 1.0 - alpha))
    ratio = polygon_area(corner) / polygon_area(rest)
    q = Quantizer([u, v])
    region = Region.polygon(TRIANGLE)
    return CaseSolution(
        "golden", (alpha, alpha), q, distortion(region, q).value,
        cut=(Point(1.0 - alpha, 0.0), Point(1.0, alpha)),
        extra={
            "area_ratio": ratio,
            "corner_centroid_polygon": polygon_centroid(corner),
            "trapezoid_centroid_polygon": polygon_centroid(rest),
        },
    )


# -- rhombus ----------------------------------------------------------------

RH_O = np.array([0.0, 0.0])
RH_A = np.array([1.0, 0.0])
RH_B = np.array([1.0 + 1.0 / SQRT2, 1.0 / SQRT2])
RH_C = np.array([1.0 / SQRT2, 1.0 / SQRT2])
RHOMBUS = tuple(map(tuple, (RH_O, RH_A, RH_B, RH_C)))
RH_AREA = 1.0 / SQRT2
RH_CENTER = 0.5 * np.array([1.0 + 1.0 / SQRT2, 1.0 / SQRT2])


def _rest_of(p, cut_area):
    """Center of mass of the rhombus with a piece of area ``cut_area`` at ``p`` removed."""
    return (RH_AREA * RH_CENTER - cut_area * p) / (RH_AREA - cut_area)


def _case_points(case_id: int, al, be):
    """Cut points d, e and the two centers p, q for one or many line placements.

    ``al`` and ``be`` may be scalars or equal-length arrays; points come back
    with a trailing axis of length 2.
    """
    o, a, b, c = RH_O, RH_A, RH_B, RH_C
    al = np.asarray(al, dtype=float)[..., None]
    be = np.asarray(be, dtype=float)[..., None]
    tri = al * be / (2.0 * SQRT2)
    if case_id == 1:  # OA and OC, corner O
        d, e = al * a, be * c
        p = (o + d + e) / 3.0
        q = _rest_of(p, tri)
    elif case_id == 2:  # AB and BC, corner B
        d, e = b + al * (a - b), b + be * (c - b)
        p = (b + d + e) / 3.0
        q = _rest_of(p, tri)
    elif case_id == 3:  # OA and AB, corner A
        d, e = (1.0 - al) * a, be * b + (1.0 - be) * a
        p = (a + d + e) / 3.0
        q = _rest_of(p, tri)
    elif case_id == 4:  # OC and BC, corner C
        d, e = (1.0 - al) * c, c + be * (b - c)
        p = (c + d + e) / 3.0
        q = _rest_of(p, tri)
    elif case_id == 5:  # OA and BC
        d, e = al * a, be * b + (1.0 - be) * c
        p = (al * (c + d) / 3.0 + be * (c + d + e) / 3.0) / (al + be)
        q = ((1 - al) * (a + b + d) / 3.0 + (1 - be) * (b + d + e) / 3.0) / ((1 - al) + (1 - be))
    elif case_id == 6:  # AB and OC
        d, e = (1.0 - al) * a + al * b, be * c
        p = (be * (a + e) / 3.0 + al * (a + d + e) / 3.0) / (al + be)
        q = ((1 - al) * (b + c + d) / 3.0 + (1 - be) * (c + d + e) / 3.0) / ((1 - al) + (1 - be))
    else:
        raise InvalidInputError(f"rhombus case must be 1..6, got {case_id}")
    return d, e, p, q


def rhombus_case_residual(case_id: int, al, be) -> np.ndarray:
    """``[rho(p, d) - rho(q, d), rho(p, e) - rho(q, e)]`` along the last axis."""
    d, e, p, q = _case_points(case_id, al, be)
    return np.stack([
        np.sum((p - d) ** 2, axis=-1) - np.sum((q - d) ** 2, axis=-1),
        np.sum((p - e) ** 2, axis=-1) - np.sum((q - e) ** 2, axis=-1),
    ], axis=-1)


def _damped_newton(fun, x0, fd_step=1e-7, ftol=1e-13, max_iter=100):
    """Damped Newton run independently from every row of ``x0``.

    ``fun`` maps (k, 2) -> (k, 2). Rows that stall, leave the finite domain
    or hit a singular Jacobian are marked as failed (NaN).
    """
    x = np.array(x0, dtype=float)
    k = len(x)
    alive = np.ones(k, dtype=bool)
    with np.errstate(all="ignore"):
        fx = fun(x)
        for _ in range(max_iter):
            alive &= np.all(np.isfinite(fx), axis=1)
            norm = np.max(np.abs(fx), axis=1)
            active = alive & (norm >= ftol)
            if not np.any(active):
                break
            jac = np.empty((k, 2, 2))
            for j in range(2):
                xs = x.copy()
                xs[:, j] += fd_step
                jac[:, :, j] = (fun(xs) - fx) / fd_step
            det = jac[:, 0, 0] * jac[:, 1, 1] - jac[:, 0, 1] * jac[:, 1, 0]
            step = np.stack([
                -(jac[:, 1, 1] * fx[:, 0] - jac[:, 0, 1] * fx[:, 1]) / det,
                -(-jac[:, 1, 0] * fx[:, 0] + jac[:, 0, 0] * fx[:, 1]) / det,
            ], axis=1)
            alive &= ~(active & ~np.all(np.isfinite(step), axis=1))
            active &= alive
            lam = np.ones(k)
            pending = active.copy()
            xn, fn = x.copy(), fx.copy()
            while np.any(pending) and lam[pending].max() > 1e-10:
                trial = x + lam[:, None] * step
                ft = fun(trial)
                ok = pending & np.all(np.isfinite(ft), axis=1) & (np.max(np.abs(ft), axis=1) < norm)
                xn[ok], fn[ok] = trial[ok], ft[ok]
                pending &= ~ok
                lam[pending] *= 0.5
            alive &= ~pending
            x, fx = xn, fn
        good = alive & (np.max(np.abs(fx), axis=1) < 1e-11)
    x[~good] = np.nan
    return x


def rhombus_case_solve(case_id: int, seeds: int = 20, dedup_tol: float = 1e-8) -> list[CaseSolution]:
    """All parameter pairs in [0, 1]^2 placing the cut on the bisector of the two centers.

    Newton starts from a ``seeds`` x ``seeds`` grid of cell midpoints. An
    empty list means Newton converged from none of the seeds, not that no
    root exists.
    """
    if case_id not in range(1, 7):
        raise InvalidInputError(f"rhombus case must be 1..6, got {case_id}")
    grid = (np.arange(seeds) + 0.5) / seeds
    s0, s1 = np.meshgrid(grid, grid, indexing="ij")
    starts = np.stack([s0.ravel(), s1.ravel()], axis=1)
    roots = _damped_newton(lambda v: rhombus_case_residual(case_id, v[:, 0], v[:, 1]), starts)
    found = []
    for x in roots:
        if np.any(np.isnan(x)) or np.any(x < -1e-9) or np.any(x > 1 + 1e-9):
            continue
        if any(np.max(np.abs(x - y)) <= dedup_tol for y in found):
            continue
        found.append(x)
    found.sort(key=lambda x: (-x[0], x[1]))
    region = Region.polygon(RHOMBUS)
    out = []
    for al, be in found:
        d, e, p, q = _case_points(case_id, al, be)
        quant = Quantizer([tuple(p), tuple(q)])
        out.append(CaseSolution(case_id, (float(al), float(be)), quant,
                                distortion(region, quant).value, cut=(Point(*d), Point(*e))))
    return out


def rhombus_all_cases(seeds: int = 20) -> dict:
    return {k: rhombus_case_solve(k, seeds) for k in range(1, 7)}
