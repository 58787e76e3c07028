"""Regression matrix over every reference value the library is expected to reproduce."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .cases import disc_two_means_solve, golden_partition_solve, rhombus_case_solve
from .cquant import best_nmeans
from .dquant import distortion_discrete, grid4, optimal_nmeans_exact, triangle9
from .region import Density, Region, expected_vector
from .voronoi import Quantizer

TABLES = ("centroid", "prop2", "prop3", "prop4", "discrete")
BETA = ((2.8, 3.6), (5 / 3, 5 / 3), (3.6, 1.8), (1.0, 3.5), (1.0, 1.0))


@dataclass(frozen=True)
class Row:
    table: str
    label: str
    expected: float
    computed: float
    tol: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return abs(self.computed - self.expected) <= self.tol


def _centroid():
    from .formats import REGION_PRESETS

    ev = expected_vector(REGION_PRESETS["example1"]())
    sq = Region.polygon(((0, 0), (1, 0), (1, 1), (0, 1)), Density.polynomial([(4.0, 1, 1)]))
    ev2 = expected_vector(sq)
    return [
        Row("centroid", "example1 x1 = 2/(2+pi)", 2 / (2 + math.pi), ev.x1, 1e-9),
        Row("centroid", "example1 x2 = 2/(3(2+pi))", 2 / (3 * (2 + math.pi)), ev.x2, 1e-9),
        Row("centroid", "square, density 4 x1 x2: x1", 2 / 3, ev2.x1, 1e-12),
        Row("centroid", "square, density 4 x1 x2: x2", 2 / 3, ev2.x2, 1e-12),
    ]


def _prop2():
    sol = disc_two_means_solve()
    trace = best_nmeans(Region.disc(), 2, restarts=32, seed=42)
    c = trace.final.array
    radii = [math.hypot(*p) for p in c]
    return [
        Row("prop2", "chord half-length root a", 1.0, sol.parameters[0], 1e-6,
            f"sign changes in (0,1): {sol.extra['scan'].sign_changes}"),
        Row("prop2", "Lloyd |c| = 4/(3 pi)", 4 / (3 * math.pi), max(radii), 1e-6,
            f"antipodal gap {math.hypot(*(c[0] + c[1])):.2e}"),
        Row("prop2", "V2 = 1/2 - 16/(9 pi^2)", 0.5 - 16 / (9 * math.pi**2), trace.distortion, 1e-9),
    ]


def _prop3():
    sol = golden_partition_solve()
    golden = (math.sqrt(5) - 1) / 2
    return [
        Row("prop3", "golden-ratio root", golden, sol.parameters[0], 1e-9),
        Row("prop3", "area ratio of the two pieces", golden, sol.extra["area_ratio"], 1e-9),
    ]


def _prop4():
    c1 = rhombus_case_solve(1)[0]
    c3 = rhombus_case_solve(3)[0]
    return [
        Row("prop4", "Case 1 V2 (optimal)", 0.0718274, c1.distortion, 1e-6),
        Row("prop4", "Case 3 V2 (CVT, not optimal)", 0.150395, c3.distortion, 1e-6),
    ]


def _discrete():
    rows = []
    tri, grid = triangle9(), grid4()
    for n, ref in enumerate((0.185185, 0.111111, 0.037037, 0.030864), start=1):
        r = optimal_nmeans_exact(tri, n)
        rows.append(Row("discrete", f"triangle9 V{n}", ref, r.vn, 1e-6, f"{r.multiplicity} optimal set(s)"))
    for n, ref in enumerate((2.5, 1.5, 0.927083, 0.5, 0.4375), start=1):
        r = optimal_nmeans_exact(grid, n)
        rows.append(Row("discrete", f"grid4 V{n}", ref, r.vn, 1e-6, f"{r.multiplicity} optimal set(s)"))
    rows.append(Row("discrete", "grid4 beta (CVT, not optimal)", 0.614583,
                    distortion_discrete(grid, Quantizer(BETA)), 1e-6))
    return rows


_BUILDERS = {"centroid": _centroid, "prop2": _prop2, "prop3": _prop3, "prop4": _prop4, "discrete": _discrete}


def run(table: str = "all") -> list[Row]:
    names = TABLES if table == "all" else (table,)
    if any(t not in _BUILDERS for t in names):
        raise ValueError(f"unknown table {table!r}; choose from all, {', '.join(TABLES)}")
    return [row for t in names for row in _BUILDERS[t]()]


def format_table(rows) -> str:
    head = f"{'table':<9} {'check':<34} {'expected':>16} {'computed':>16} {'tol':>7}  result"
    lines = [head, "-" * len(head)]
    for r in rows:
        lines.append(f"{r.table:<9} {r.label:<34} {r.expected:>16.9g} {r.computed:>16.9g} {r.tol:>7.0e}  "
                     f"{'PASS' if r.passed else 'FAIL'}" + (f"  ({r.note})" if r.note else ""))
    return "\n".join(lines)
