import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cvtq.dquant import (DiscreteUniform, conditional_mean, distortion_discrete, enumerate_optimal_sets, grid4,
                         is_discrete_cvt, lloyd_discrete, mean, optimal_nmeans_exact, triangle9)
from cvtq.errors import DomainError, InvalidInputError, ProblemSizeError
from cvtq.geom import Point
from cvtq.reproduce import BETA
from cvtq.voronoi import Quantizer

R3 = math.sqrt(3)


def test_duplicates_rejected():
    with pytest.raises(InvalidInputError):
        DiscreteUniform(((0, 0), (1, 1), (0, 1e-13)))
    with pytest.raises(InvalidInputError):
        DiscreteUniform(())


def test_means():
    assert mean(grid4()) == Point(2.5, 2.5)
    m = mean(triangle9())
    assert m.x1 == pytest.approx(0.5, abs=1e-15) and m.x2 == pytest.approx(R3 / 6, abs=1e-15)
    assert mean(DiscreteUniform(((3, -2),))) == Point(3, -2)


def test_conditional_means():
    g = grid4()
    idx = [i for i, p in enumerate(g.points) if p.x1 <= 2 and p.x2 <= 2]
    assert conditional_mean(g, idx) == Point(1.5, 1.5)
    t = triangle9()
    bottom = [i for i, p in enumerate(t.points) if p.x2 == 0]
    c = conditional_mean(t, bottom)
    assert c.x1 == pytest.approx(0.5) and c.x2 == 0
    assert conditional_mean(g, range(g.m)) == mean(g)
    with pytest.raises(DomainError):
        conditional_mean(g, [])


def test_distortion_examples():
    assert distortion_discrete(grid4(), Quantizer(((2.5, 2.5),))) == 2.5
    assert distortion_discrete(triangle9(), Quantizer(((0.5, R3 / 6),))) == pytest.approx(0.185185, abs=1e-6)
    assert distortion_discrete(grid4(), Quantizer(BETA)) == pytest.approx(0.614583, abs=1e-6)


def test_literal_rounded_beta_is_not_a_fixed_point():
    rounded = Quantizer(((2.8, 3.6), (1.67, 1.67), (3.6, 1.8), (1, 3.5), (1, 1)))
    assert not is_discrete_cvt(grid4(), rounded)
    assert is_discrete_cvt(grid4(), Quantizer(BETA))


def test_lloyd_examples():
    g = grid4()
    res = lloyd_discrete(g, Quantizer(((1.5, 1.5), (1.5, 3.5), (3.5, 1.5), (3.5, 3.5))))
    assert res.sse == 0.5
    one = lloyd_discrete(g, Quantizer(((0, 0),)))
    assert one.centers[0] == Point(2.5, 2.5) and one.sse == 2.5
    beta = lloyd_discrete(g, Quantizer(BETA))
    assert beta.centers.close_to(Quantizer(BETA), 1e-12)
    assert beta.sse == pytest.approx(0.614583, abs=1e-6)


def test_lloyd_reseeds_empty_cluster():
    res = lloyd_discrete(grid4(), Quantizer(((2.5, 2.5), (100, 100))))
    assert len(set(res.assignment)) == 2
    assert res.sse < 2.5


def test_clustering_invariants():
    dist = triangle9()
    res = lloyd_discrete(dist, Quantizer(((0, 0), (1, 0), (0.5, 0.8))))
    lab = np.array(res.assignment)
    for k, c in enumerate(res.centers):
        assert np.allclose(dist.array[lab == k].mean(axis=0), tuple(c), atol=1e-12)
    sse = sum(((dist.array[i] - tuple(res.centers[k])) ** 2).sum() for i, k in enumerate(lab)) / dist.m
    assert res.sse == pytest.approx(sse, abs=1e-15)


def test_exact_examples():
    t3 = optimal_nmeans_exact(triangle9(), 3)
    assert t3.multiplicity == 1
    assert t3.vn == pytest.approx(0.037037, abs=1e-6)
    want = Quantizer(((1 / 6, R3 / 18), (5 / 6, R3 / 18), (0.5, 7 * R3 / 18)))
    assert t3.optimal_sets[0].close_to(want, 1e-12)
    g4 = optimal_nmeans_exact(grid4(), 4)
    assert g4.multiplicity == 1 and g4.vn == 0.5


def test_enumerate_counts():
    assert enumerate_optimal_sets(grid4(), 2)[0] == 2
    assert enumerate_optimal_sets(grid4(), 3)[0] == 4
    assert enumerate_optimal_sets(triangle9(), 3)[0] == 1
    count, sets = enumerate_optimal_sets(triangle9(), 2)
    assert count == 3 == len(sets)  # one per corner of the triangle


def test_exact_guards():
    with pytest.raises(DomainError):
        optimal_nmeans_exact(grid4(), 17)
    with pytest.raises(DomainError):
        optimal_nmeans_exact(grid4(), 0)
    big = DiscreteUniform(tuple((float(i), float(i * i % 7)) for i in range(25)))
    with pytest.raises(ProblemSizeError, match="lloyd_discrete"):
        optimal_nmeans_exact(big, 3)


def test_vn_trivial_ends():
    g = grid4()
    assert optimal_nmeans_exact(g, 16).vn == 0.0
    assert optimal_nmeans_exact(g, 1).vn == 2.5


def _dihedral(q: Quantizer, k: int) -> Quantizer:
    a = q.array - 2.5
    ops = [lambda p: p, lambda p: p[:, ::-1] * [1, -1], lambda p: -p, lambda p: p[:, ::-1] * [-1, 1],
           lambda p: p * [1, -1], lambda p: p * [-1, 1], lambda p: p[:, ::-1], lambda p: -p[:, ::-1]]
    return Quantizer(tuple(map(tuple, ops[k](a) + 2.5)))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_grid_optimal_sets_closed_under_square_symmetries(n):
    sets = optimal_nmeans_exact(grid4(), n).optimal_sets
    for k in range(8):
        for q in sets:
            assert any(_dihedral(q, k).close_to(s, 1e-9) for s in sets)


@pytest.mark.parametrize("name,n", [("grid4", n) for n in range(1, 6)] + [("triangle9", n) for n in range(1, 5)])
def test_every_optimal_set_is_a_fixed_point(name, n):
    dist = grid4() if name == "grid4" else triangle9()
    res = optimal_nmeans_exact(dist, n)
    for q in res.optimal_sets:
        assert distortion_discrete(dist, q) == pytest.approx(res.vn, abs=1e-9)
        assert is_discrete_cvt(dist, q)
        assert lloyd_discrete(dist, q).centers.close_to(q, 1e-12)


def test_vn_non_increasing():
    vals = [optimal_nmeans_exact(triangle9(), n).vn for n in range(1, 10)]
    assert all(b <= a + 1e-15 for a, b in zip(vals, vals[1:]))
    assert vals[-1] == 0.0


point_sets = st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=2, max_size=9, unique=True)


@settings(max_examples=40, deadline=None)
@given(point_sets, st.data())
def test_lloyd_never_beats_exact(pts, data):
    dist = DiscreteUniform(tuple((float(x), float(y)) for x, y in pts))
    n = data.draw(st.integers(1, dist.m))
    idx = data.draw(st.permutations(range(dist.m)))[:n]
    res = lloyd_discrete(dist, Quantizer(tuple(tuple(dist.array[i]) for i in idx)))
    assert res.sse >= optimal_nmeans_exact(dist, n).vn - 1e-12


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.floats(-50, 50), st.floats(-50, 50)), min_size=1, max_size=30), st.data())
def test_variance_decomposition(pts, data):
    a = np.array(pts)
    lab = np.array(data.draw(st.lists(st.integers(0, 4), min_size=len(a), max_size=len(a))))
    g = a.mean(axis=0)
    total = ((a - g) ** 2).sum()
    within = between = 0.0
    for k in np.unique(lab):
        b = a[lab == k]
        within += ((b - b.mean(axis=0)) ** 2).sum()
        between += len(b) * ((b.mean(axis=0) - g) ** 2).sum()
    assert abs(total - within - between) <= 1e-10 * max(1.0, total)
