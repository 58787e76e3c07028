"""Continuous quantization: distortion, Lloyd relaxation and multi-start search.

Distortion is taken with respect to the *normalized* distribution, i.e.
``V(P; q) = (1 / M) sum_cells int |x - c|^2 rho dA`` with ``M`` the total
mass, so it does not depend on the constant in front of a uniform density.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .geom import Point
from .region import Region, mass_profile
from .voronoi import Quantizer, nearest_index, voronoi_partition

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10_000
RESEED_SAMPLES = 1_000
RESEED_SEED = 0x5EED


@dataclass(frozen=True)
class DistortionReport:
    value: float
    per_cell: tuple
    method: str
    estimated_error: float = 0.0

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class LloydTrace:
    iterations: int
    distortion_history: tuple
    final: Quantizer
    converged: bool
    cvt_deviation: float

    @property
    def distortion(self) -> float:
        return self.distortion_history[-1]


def _report(cells, q: Quantizer, total_mass: float) -> DistortionReport:
    per = []
    err = 0.0
    methods = set()
    for cell, c in zip(cells, q.centers):
        if cell.is_empty:
            per.append(0.0)
            continue
        prof = cell.mass_profile
        per.append(max(prof.cost(c), 0.0) / total_mass)
        methods.add(prof.method)
        err += prof.estimated_error * (1.0 + c.dot(c)) / total_mass
    method = next((m for m in ("quadrature", "segment-analytic") if m in methods), "exact-polygon")
    return DistortionReport(math.fsum(per), tuple(per), method, err)


def distortion(region: Region, q: Quantizer) -> DistortionReport:
    """Expected squared distance to the nearest center."""
    cells = voronoi_partition(region, q)
    return _report(cells, q, mass_profile(region).mass)


def _reseed(region: Region, centers: list, empty: list) -> list:
    rng = np.random.default_rng(RESEED_SEED)
    pool = region.sample(RESEED_SAMPLES, rng)
    taken = [i for i in range(len(centers)) if i not in empty]
    for i in empty:
        cur = np.array([tuple(centers[j]) for j in taken])
        d = ((pool[:, None, :] - cur[None, :, :]) ** 2).sum(-1).min(axis=1)
        k = int(np.argmax(d))
        centers[i] = Point(*pool[k])
        taken.append(i)
    return centers


def _advance(region: Region, q: Quantizer, total_mass: float):
    cells = voronoi_partition(region, q)
    rep = _report(cells, q, total_mass)
    new = [c if cell.is_empty else cell.mass_profile.center for cell, c in zip(cells, q.centers)]
    empty = [cell.generator_index for cell in cells if cell.is_empty]
    if empty:
        new = _reseed(region, new, empty)
    return rep, Quantizer(tuple(new))


def lloyd_step(region: Region, q: Quantizer) -> Quantizer:
    """Move every center to the center of mass of its Voronoi cell."""
    return _advance(region, q, mass_profile(region).mass)[1]


def lloyd_run(region: Region, init: Quantizer, tol: float = DEFAULT_TOL,
              max_iter: int = DEFAULT_MAX_ITER) -> LloydTrace:
    if not tol > 0 or max_iter < 1:
        raise InvalidInputError("need tol > 0 and max_iter >= 1")
    total = mass_profile(region).mass
    q = init
    history = []
    converged = False
    it = 0
    while it < max_iter:
        rep, nxt = _advance(region, q, total)
        history.append(rep.value)
        it += 1
        move = float(np.max(np.sqrt(((nxt.array - q.array) ** 2).sum(axis=1))))
        q = nxt
        if move < tol:
            converged = True
            break
    rep, nxt = _advance(region, q, total)
    history.append(rep.value)
    dev = float(np.max(np.sqrt(((nxt.array - q.array) ** 2).sum(axis=1))))
    return LloydTrace(it, tuple(history), q.canonical(), converged, dev)


def restart_rng(seed: int, restart: int) -> np.random.Generator:
    """Counter-based stream keyed by (seed, restart) so restarts are order-free."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, restart])))


def random_quantizer(region: Region, n: int, rng: np.random.Generator) -> Quantizer:
    return Quantizer(tuple(map(tuple, region.sample(n, rng))))


def best_nmeans(region: Region, n: int, restarts: int = 16, seed: int = 42,
                tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER,
                parallel: bool = False) -> LloydTrace:
    """Best CVT found by Lloyd from ``restarts`` random starts (not a global optimum proof)."""
    if n < 1 or restarts < 1:
        raise InvalidInputError("need n >= 1 and restarts >= 1")

    def one(r):
        return lloyd_run(region, random_quantizer(region, n, restart_rng(seed, r)), tol, max_iter)

    if parallel and restarts > 1:
        with ThreadPoolExecutor() as pool:
            traces = list(pool.map(one, range(restarts)))
    else:
        traces = [one(r) for r in range(restarts)]
    return min(traces, key=lambda t: (t.distortion, [x for c in t.final.as_lists() for x in c]))


def monte_carlo_distortion(region: Region, q: Quantizer, samples: int = 10**6, seed: int = 0):
    """Sample estimate of the distortion and its 3-sigma half-width.

    Uniform densities only; used as a cross-check for quadrature results.
    """
    if not region.density.is_uniform:
        raise InvalidInputError("Monte Carlo check supports uniform densities only")
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    done = 0
    centers = q.array
    while done < samples:
        k = min(1_000_000, samples - done)
        pts = region.sample(k, rng)
        idx = nearest_index(pts, centers)
        d = ((pts - centers[idx]) ** 2).sum(axis=1)
        total += float(d.sum())
        total_sq += float((d * d).sum())
        done += k
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    return mean, 3.0 * math.sqrt(var / samples)
