"""Quantization of discrete uniform distributions on small point sets.

``optimal_nmeans_exact`` solves minimum sum-of-squares clustering exactly by
branch and bound over canonical assignments (a point may only open the next
unused cluster). Partial assignments are pruned with

    partial within-cluster SSE  +  optimal SSE of the unassigned suffix,

which is a valid lower bound because the SSE of a cluster never drops below
the summed SSE of any split of it. The suffix optima are themselves
computed by the same search, from the shortest suffix upward.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidInputError, ProblemSizeError
from .geom import Point, as_point
from .voronoi import Quantizer, nearest_index

EXACT_MAX_POINTS = 24
TIE_TOL = 1e-9


@dataclass(frozen=True)
class DiscreteUniform:
    """Finite point set, each point carrying mass 1/m."""

    points: tuple

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.points)
        if not pts:
            raise InvalidInputError("need at least one point")
        arr = np.array([tuple(p) for p in pts])
        if len(pts) > 1:
            d = np.abs(arr[:, None, :] - arr[None, :, :]).max(-1)
            d[np.diag_indices(len(pts))] = np.inf
            if d.min() <= 1e-12:
                raise InvalidInputError("duplicate support points")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_arr", arr)

    @property
    def array(self) -> np.ndarray:
        return self._arr

    @property
    def m(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Clustering:
    assignment: tuple
    centers: Quantizer
    sse: float  # mean squared distance to the assigned center


@dataclass(frozen=True)
class OptimalResult:
    vn: float
    optimal_sets: tuple
    nodes_explored: int

    @property
    def multiplicity(self) -> int:
        return len(self.optimal_sets)


def triangle9() -> DiscreteUniform:
    r3 = math.sqrt(3.0)
    return DiscreteUniform((
        (0.0, 0.0), (1 / 3, 0.0), (2 / 3, 0.0), (1.0, 0.0),
        (1 / 6, r3 / 6), (1 / 3, r3 / 3), (1 / 2, r3 / 2), (5 / 6, r3 / 6), (2 / 3, r3 / 3),
    ))


def grid4() -> DiscreteUniform:
    return DiscreteUniform(tuple((float(i), float(j)) for i in range(1, 5) for j in range(1, 5)))


PRESETS = {"triangle9": triangle9, "grid4": grid4}


def mean(dist: DiscreteUniform) -> Point:
    return Point(*dist.array.mean(axis=0))


def conditional_mean(dist: DiscreteUniform, subset) -> Point:
    idx = list(subset)
    if not idx:
        raise DomainError("conditional mean of an empty subset")
    return Point(*dist.array[idx].mean(axis=0))


def assign(dist: DiscreteUniform, q: Quantizer) -> np.ndarray:
    return nearest_index(dist.array, q.array)


def distortion_discrete(dist: DiscreteUniform, q: Quantizer) -> float:
    c = q.array
    d = ((dist.array[:, None, :] - c[None, :, :]) ** 2).sum(-1).min(axis=1)
    return math.fsum(d) / dist.m


def is_discrete_cvt(dist: DiscreteUniform, q: Quantizer, tol: float = 1e-9) -> bool:
    """Every center is the mean of the points nearest to it (and owns at least one)."""
    lab = assign(dist, q)
    for k, c in enumerate(q.centers):
        members = np.flatnonzero(lab == k)
        if len(members) == 0:
            return False
        if (conditional_mean(dist, members) - c).norm() > tol:
            return False
    return True


def _clustering(dist: DiscreteUniform, labels, n: int) -> Clustering:
    centers = [conditional_mean(dist, np.flatnonzero(labels == k)) for k in range(n)]
    arr = np.array([tuple(c) for c in centers])
    sse = math.fsum(((dist.array - arr[labels]) ** 2).sum(axis=1)) / dist.m
    return Clustering(tuple(int(x) for x in labels), Quantizer(tuple(centers)), sse)


def lloyd_discrete(dist: DiscreteUniform, init: Quantizer, max_iter: int = 1000) -> Clustering:
    """Alternate nearest-center assignment and cluster means until the assignment is stable."""
    n = len(init)
    if n > dist.m:
        raise DomainError("more centers than support points")
    pts = dist.array
    centers = init.array.copy()
    labels = None
    for _ in range(max_iter):
        new = nearest_index(pts, centers)
        for k in range(n):
            if not np.any(new == k):
                cost = ((pts - centers[new]) ** 2).sum(axis=1)
                far = int(np.argmax(cost))
                centers[k] = pts[far]
                new = nearest_index(pts, centers)
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        centers = np.array([pts[labels == k].mean(axis=0) for k in range(n)])
    return _clustering(dist, labels, n)


# -- exact search -----------------------------------------------------------


class _Search:
    """Canonical-assignment branch and bound over a fixed point order."""

    def __init__(self, xs, ys, n, tail):
        self.xs, self.ys, self.n, self.tail = xs, ys, n, tail
        self.nodes = 0

    def run(self, start: int, best: float, slack: float, collect: bool):
        """Minimum SSE of points[start:] in at most ``n`` clusters.

        With ``collect`` every assignment within ``slack`` of the optimum is
        kept; otherwise only strict improvements on ``best`` are explored.
        """
        xs, ys, tail = self.xs, self.ys, self.tail
        m = len(xs)
        n = min(self.n, m - start)
        cnt = [0] * n
        sx = [0.0] * n
        sy = [0.0] * n
        lab = [0] * m
        self.best = best
        sols = []

        def limit():
            return self.best + slack if collect else self.best

        def rec(i, opened, partial):
            self.nodes += 1
            if i == m:
                if collect:
                    if partial < self.best - slack:
                        sols.clear()
                    if partial <= self.best + slack:
                        sols.append((partial, lab[start:]))
                    self.best = min(self.best, partial)
                elif partial < self.best:
                    self.best = partial
                return
            x, y = xs[i], ys[i]
            kids = []
            if m - i > n - opened:
                for k in range(opened):
                    c = cnt[k]
                    dx = x - sx[k] / c
                    dy = y - sy[k] / c
                    kids.append((partial + c / (c + 1.0) * (dx * dx + dy * dy), k))
                kids.sort()
            if opened < n:
                kids.append((partial, opened))
            for val, k in kids:
                lim = limit()
                if val + tail[i + 1] > lim or (not collect and val + tail[i + 1] >= lim):
                    continue
                cnt[k] += 1
                sx[k] += x
                sy[k] += y
                lab[i] = k
                rec(i + 1, opened + (k == opened), val)
                cnt[k] -= 1
                sx[k] -= x
                sy[k] -= y

        rec(start, 0, 0.0)
        if collect:
            sols = [s for s in sols if s[0] <= self.best + slack]
        return self.best, sols


def optimal_nmeans_exact(dist: DiscreteUniform, n: int, tol: float = TIE_TOL) -> OptimalResult:
    """Exact V_n and every optimal set of n-means (within ``tol`` in distortion)."""
    m = dist.m
    if not 1 <= n <= m:
        raise DomainError(f"need 1 <= n <= {m}, got n={n}")
    if m > EXACT_MAX_POINTS:
        raise ProblemSizeError(
            f"{m} points exceeds the exact-solver limit of {EXACT_MAX_POINTS}; use lloyd_discrete")
    pts = dist.array
    g = pts.mean(axis=0)
    order = sorted(range(m), key=lambda i: -float(((pts[i] - g) ** 2).sum()))
    xs = [float(pts[i, 0]) for i in order]
    ys = [float(pts[i, 1]) for i in order]

    tail = [0.0] * (m + 1)
    search = _Search(xs, ys, n, tail)
    for i in range(m - 1, 0, -1):
        if m - i <= n:
            tail[i] = 0.0
            continue
        tail[i], _ = search.run(i, math.inf, 0.0, collect=False)

    slack = tol * m
    best, _ = search.run(0, math.inf, 0.0, collect=False)
    best, sols = search.run(0, best, slack, collect=True)

    # incremental sums drift in the last bits; recompute each partition with fsum
    sets = []
    exact = []
    for _, lab in sols:
        lab = np.array(lab)
        groups = [[order[i] for i in np.flatnonzero(lab == k)] for k in range(n)]
        centers = [conditional_mean(dist, g) for g in groups]
        sse = math.fsum(float(((pts[g] - tuple(c)) ** 2).sum()) for g, c in zip(groups, centers))
        exact.append(sse / m)
        q = Quantizer(tuple(centers)).canonical()
        if not any(q.close_to(other, tol) for other in sets):
            sets.append(q)
    sets.sort(key=lambda q: [x for c in q.as_lists() for x in c])
    return OptimalResult(min(exact), tuple(sets), search.nodes)


def enumerate_optimal_sets(dist: DiscreteUniform, n: int) -> tuple[int, list]:
    res = optimal_nmeans_exact(dist, n)
    return res.multiplicity, list(res.optimal_sets)
