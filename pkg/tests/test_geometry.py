"""Test the D and H distances, the Voronoi index and the triangle toolkit."""

import numpy as np
import pytest

from hckm.core.models import Instance, Partition
from hckm.errors import DimensionMismatchError
from hckm.geometry import (
    build_voronoi_index,
    dist_h,
    evaluate_cost_h,
    h_tables,
    h_upper_bound_holds,
    snap_center,
)
from hckm.geometry.distances import check_extended_triangle, check_four_point, dist_d

S_LINE = np.array([[0.0, 0.0], [10.0, 0.0]])


def _index(points, representing=S_LINE):
    return build_voronoi_index(Instance(np.asarray(points, dtype=float), 1, len(points)),
                               representing)


def test_dist_d_examples():
    assert dist_d(np.array([0.0, 0.0]), np.array([3.0, 4.0])) == 25.0
    x = np.array([1.5, -2.0])
    assert dist_d(x, x) == 0.0
    assert dist_d(np.ones(3), np.full(3, 2.0)) == 3.0


def test_dist_d_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        dist_d(np.zeros(2), np.zeros(3))


def test_voronoi_index_examples():
    index = _index([[0.0, 0.0], [10.0, 0.0]])
    assert index.per_region_count.tolist() == [1, 1]
    assert index.voronoi_cost == 0.0

    index = _index([[1.0, 0.0]])
    assert index.nearest_of(0) == (0, 1.0)
    assert index.voronoi_cost == 1.0


def test_voronoi_tie_goes_to_lowest_index():
    index = _index([[5.0, 0.0]])
    assert dist_d(np.array([5.0, 0.0]), S_LINE[0]) == dist_d(np.array([5.0, 0.0]), S_LINE[1])
    assert index.nearest_of(0) == (0, 25.0)


def test_voronoi_index_invariants(rng):
    points = rng.normal(size=(40, 3))
    representing = points[:6]
    index = build_voronoi_index(Instance(points, 2, 40), representing)
    assert index.per_region_count.sum() == 40
    for i, s in enumerate(representing):
        assert index.nearest(s) == (i, 0.0)
    brute = ((points[:, None, :] - representing[None, :, :]) ** 2).sum(axis=2).min(axis=1)
    assert np.allclose(index.nearest_dist, brute)


def test_voronoi_index_rejects_empty_or_mismatched_set():
    instance = Instance(np.zeros((2, 2)), 1, 2)
    with pytest.raises(ValueError):
        build_voronoi_index(instance, np.zeros((0, 2)))
    with pytest.raises(DimensionMismatchError):
        build_voronoi_index(instance, np.zeros((1, 3)))


def test_dist_h_examples():
    index = _index([[1.0, 0.0]])
    assert dist_h(S_LINE[0], S_LINE[1], index) == 100.0
    x = np.array([1.0, 0.0])
    assert dist_h(x, S_LINE[0], index) == 1.0
    assert dist_h(x, S_LINE[1], index) == 101.0


def test_dist_h_unresolvable_query():
    index = _index([[1.0, 0.0]])
    with pytest.raises(DimensionMismatchError):
        dist_h(np.zeros(3), S_LINE[0], index)


def test_dist_h_is_not_a_metric(rng):
    points = rng.normal(size=(20, 2)) * 4
    index = build_voronoi_index(Instance(points, 1, 20), points[:3])
    for x in points:
        _, dx = index.nearest(x)
        assert dist_h(x, x, index) == pytest.approx(2 * dx)


def test_h_properties_on_random_pairs(rng):
    points = rng.normal(size=(30, 2)) * 3
    index = build_voronoi_index(Instance(points, 1, 30), points[:4])
    for _ in range(500):
        x, y = points[rng.integers(30)], points[rng.integers(30)]
        s = index.representing[rng.integers(index.size)]
        _, dx = index.nearest(x)
        assert dist_h(x, s, index) >= dx
        assert dist_h(x, y, index) == pytest.approx(dist_h(y, x, index))
        assert dist_d(x, y) <= 3 * dist_h(x, y, index) * (1 + 1e-9)
        c = rng.normal(size=2) * 5
        assert h_upper_bound_holds(x, c, index)


def test_center_snapping_dominance(rng):
    points = rng.normal(size=(25, 2)) * 3
    index = build_voronoi_index(Instance(points, 1, 25), points[:5])
    for _ in range(200):
        x = points[rng.integers(25)]
        c = rng.normal(size=2) * 5
        nearest, gap = snap_center(c, index)
        snapped = index.representing[nearest]
        assert dist_h(x, c, index) == pytest.approx(dist_h(x, snapped, index) + gap)
        assert dist_h(x, c, index) >= dist_h(x, snapped, index)


def test_extended_triangle_examples():
    i = np.array([0.0, 0.0])
    assert check_extended_triangle(i, i, np.array([7.0, 3.0]))
    assert check_extended_triangle(i, np.array([2.0, 0.0]), np.array([1.0, 0.0]))
    assert check_extended_triangle(i, np.array([2.0, 0.0]), np.array([1.0, 0.5]))


def test_extended_triangle_tight_at_midpoint():
    i, j, k = np.array([0.0, 0.0]), np.array([2.0, 0.0]), np.array([1.0, 0.0])
    assert dist_d(i, j) == 2 * (dist_d(i, k) + dist_d(j, k))
    assert check_extended_triangle(i, j, k)


def test_four_point_examples():
    p = np.array([1.0, 2.0])
    assert check_four_point(p, p, p, p)
    i, l, k, j = (np.array([float(v)]) for v in range(4))
    assert dist_d(i, j) == 3 * (dist_d(i, l) + dist_d(l, k) + dist_d(k, j))
    assert check_four_point(i, l, k, j)


@pytest.mark.parametrize("dim", [1, 2, 5, 20])
def test_triangle_inequalities_randomized(dim):
    rng = np.random.default_rng(dim)
    triples = rng.uniform(0, 1, size=(10_000, 4, dim))
    for i, j, k, l in triples:  # noqa: E741
        assert check_extended_triangle(i, j, k)
        assert check_four_point(i, l, k, j)


def test_h_tables_agree_with_evaluate_cost_h(rng):
    points = rng.normal(size=(15, 2))
    instance = Instance(points, 3, 5)
    index = build_voronoi_index(instance, points[:4])
    centers = rng.normal(size=(3, 2))
    labels = rng.integers(0, 3, size=15)
    real, scaled = h_tables(index, centers)
    cost, cost_scaled = evaluate_cost_h(instance, Partition(labels, centers), index)
    rows = np.arange(15)
    assert cost == pytest.approx(real[rows, labels].sum())
    assert cost_scaled == int(scaled[rows, labels].sum())
    for j in range(15):
        assert real[j, labels[j]] == pytest.approx(dist_h(points[j], centers[labels[j]], index))
