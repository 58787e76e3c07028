import math

import numpy as np
import pytest

from cvtq.errors import DegenerateGeometryError, InvalidInputError
from cvtq.geom import HalfPlane
from cvtq.region import (Density, Region, centroid_between_curves, expected_vector, mass_profile,
                         profile_of, shape_centroid)
from cvtq.shapes import DiscShape, segment_local_moments

SQUARE = ((0, 0), (1, 0), (1, 1), (0, 1))


def test_density_validation():
    with pytest.raises(InvalidInputError):
        Density.uniform(0.0)
    with pytest.raises(InvalidInputError):
        Density.polynomial([(1.0, 2, 1)])
    with pytest.raises(InvalidInputError):
        Density("gaussian")
    assert Density.polynomial([(3.0, 0, 0)]).is_uniform
    assert Density.polynomial([(1.0, 1, 1)]).degree == 2


def test_negative_density_rejected():
    with pytest.raises(InvalidInputError):
        Region.polygon(SQUARE, Density.polynomial([(1.0, 1, 0), (-0.5, 0, 0)]))


def test_zero_mass_rejected():
    with pytest.raises(DegenerateGeometryError):
        centroid_between_curves(lambda x: 0.0, lambda x: 0.0, 0.0, 1.0)


def test_uniform_density_constant_is_irrelevant():
    a = expected_vector(Region.polygon(((0, 0), (2, 0), (0, 1)), Density.uniform(7.5)))
    b = expected_vector(Region.polygon(((0, 0), (2, 0), (0, 1))))
    assert a.x1 == pytest.approx(b.x1, abs=1e-15) and a.x2 == pytest.approx(b.x2, abs=1e-15)
    assert b.x1 == pytest.approx(2 / 3) and b.x2 == pytest.approx(1 / 3)


def test_expected_vector_differs_from_centroid_for_nonuniform():
    r = Region.polygon(SQUARE, Density.polynomial([(4.0, 1, 1)]))
    ev, c = expected_vector(r), shape_centroid(r)
    assert (ev.x1, ev.x2) == pytest.approx((2 / 3, 2 / 3), abs=1e-12)
    assert (c.x1, c.x2) == pytest.approx((0.5, 0.5), abs=1e-15)


def test_polynomial_density_against_sampling():
    r = Region.polygon(((0, 0), (2, 0), (1, 1.5)), Density.polynomial([(1.0, 0, 0), (0.5, 2, 0), (0.3, 0, 1)]))
    pts = r.sample(400_000, np.random.default_rng(3))
    w = r.density(pts[:, 0], pts[:, 1])
    ev = expected_vector(r)
    mc = (w[:, None] * pts).sum(axis=0) / w.sum()
    assert np.allclose(mc, tuple(ev), atol=5e-3)


def test_unit_disc_profile():
    prof = mass_profile(Region.disc())
    assert prof.mass == pytest.approx(math.pi, abs=1e-14)
    assert prof.second_moments[0] == pytest.approx(math.pi / 4, abs=1e-14)
    assert prof.variance == pytest.approx(0.5, abs=1e-14)


def test_segment_moments_limits():
    area, m1, iss, itt = segment_local_moments(1.0, math.pi)
    assert area == pytest.approx(math.pi)
    assert m1 == pytest.approx(0.0, abs=1e-15)
    assert iss == pytest.approx(math.pi / 4) and itt == pytest.approx(math.pi / 4)
    # half disc: first moment 2/3
    _, m1, _, _ = segment_local_moments(1.0, math.pi / 2)
    assert m1 == pytest.approx(2 / 3)


@pytest.mark.parametrize("cuts,arcs", [
    ([HalfPlane((0, 1), 0.3)], True),
    ([HalfPlane((0, 1), 0.3), HalfPlane((1, 0.2), -0.1)], True),
    ([HalfPlane((1, 1), 0.2), HalfPlane((-1, 1), 0.2), HalfPlane((0, -1), 0.4)], False),  # triangle inside
])
def test_clipped_disc_analytic_matches_quadrature_route(cuts, arcs):
    d = DiscShape((0.3, -0.2), 1.3).clipped(cuts)
    low = d.moments(2)
    high = d.moments(4)
    assert low.method == "segment-analytic"
    assert high.method == ("quadrature" if arcs else "segment-analytic")
    for pq, v in low.values.items():
        assert high[pq] == pytest.approx(v, abs=1e-11)


def test_clipped_disc_against_sampling():
    cuts = [HalfPlane((1, 1), 0.2), HalfPlane((0, -1), 0.4)]
    d = DiscShape((0.0, 0.0), 1.0).clipped(cuts)
    prof = profile_of(d, Density())
    rng = np.random.default_rng(9)
    pts = rng.uniform(-1, 1, size=(2_000_000, 2))
    inside = d.contains(pts)
    assert prof.mass == pytest.approx(4 * inside.mean(), abs=5e-3)
    c = pts[inside].mean(axis=0)
    assert np.allclose(c, tuple(prof.center), atol=3e-3)


def test_empty_clip_is_none():
    assert DiscShape((0, 0), 1).clipped([HalfPlane((1, 0), -2)]) is None


def test_example1_curve_region():
    r = Region.curve_bounded(lambda x: math.sqrt(max(0.0, 1 - x * x)), lambda x: x - 1, 0, 1)
    prof = mass_profile(r)
    assert prof.mass == pytest.approx((2 + math.pi) / 4, abs=1e-12)
    ev = prof.center
    assert ev.x1 == pytest.approx(2 / (2 + math.pi), abs=1e-10)
    assert ev.x2 == pytest.approx(2 / (3 * (2 + math.pi)), abs=1e-10)
    assert r.shape.is_convex


def test_curve_region_rejects_crossing_curves():
    with pytest.raises(InvalidInputError):
        Region.curve_bounded(lambda x: x, lambda x: 0.5, 0, 1)


def test_nonconvex_curve_region_detected():
    r = Region.curve_bounded(lambda x: 1 + x * x, lambda x: 0.0, -1, 1)
    assert not r.shape.is_convex


def test_sample_inside():
    r = Region.disc((2, 1), 0.5)
    pts = r.sample(1000, np.random.default_rng(0))
    assert pts.shape == (1000, 2)
    assert np.all(np.hypot(pts[:, 0] - 2, pts[:, 1] - 1) <= 0.5 + 1e-12)
