"""Centroidal Voronoi tessellations and optimal quantizers in the plane."""
from .cases import (disc_two_means_residual, disc_two_means_solve, golden_partition_solve,
                    rhombus_all_cases, rhombus_case_solve, scan_disc_roots)
from .cquant import (DistortionReport, LloydTrace, best_nmeans, distortion, lloyd_run, lloyd_step,
                     monte_carlo_distortion)
from .dquant import (Clustering, DiscreteUniform, OptimalResult, conditional_mean, distortion_discrete,
                     enumerate_optimal_sets, is_discrete_cvt, lloyd_discrete, mean, optimal_nmeans_exact)
from .errors import (DegenerateGeometryError, DomainError, InvalidInputError, ProblemSizeError,
                     UnsupportedDegreeError)
from .geom import ConvexPolygon, HalfPlane, Point, clip_halfplane, polygon_area, polygon_centroid, polygon_moment
from .region import (Density, MassProfile, Region, centroid_between_curves, expected_vector, mass_profile,
                     shape_centroid)
from .voronoi import CVTReport, Quantizer, VoronoiCell, is_cvt, voronoi_partition

__all__ = [
    "CVTReport", "Clustering", "ConvexPolygon", "DegenerateGeometryError", "Density", "DiscreteUniform",
    "DistortionReport", "DomainError", "HalfPlane", "InvalidInputError", "LloydTrace", "MassProfile",
    "OptimalResult", "Point", "ProblemSizeError", "Quantizer", "Region", "UnsupportedDegreeError",
    "VoronoiCell", "best_nmeans", "centroid_between_curves", "clip_halfplane", "conditional_mean",
    "disc_two_means_residual", "disc_two_means_solve", "distortion", "distortion_discrete",
    "enumerate_optimal_sets", "expected_vector", "golden_partition_solve", "is_cvt", "is_discrete_cvt",
    "lloyd_discrete", "lloyd_run", "lloyd_step", "mass_profile", "mean", "monte_carlo_distortion",
    "optimal_nmeans_exact", "polygon_area", "polygon_centroid", "polygon_moment", "rhombus_all_cases",
    "rhombus_case_solve", "scan_disc_roots", "shape_centroid", "voronoi_partition",
]
