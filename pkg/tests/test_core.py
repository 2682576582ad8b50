"""Test instances, partitions, feasibility and the D objective."""

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hckm.core import (
    Feasibility,
    Instance,
    Partition,
    as_point,
    centroid,
    check_feasibility,
    evaluate_cost_d,
    recenter,
)
from hckm.errors import DimensionMismatchError, EmptyClusterError

coords = st.floats(min_value=-100, max_value=100, allow_nan=False, allow_infinity=False)


def _line(n: int) -> np.ndarray:
    return np.arange(n, dtype=float).reshape(-1, 1)


def test_feasibility_examples():
    assert check_feasibility(Instance(_line(10), k=3, u=4)) is Feasibility.FEASIBLE
    assert check_feasibility(Instance(_line(10), k=3, u=3)) is Feasibility.INFEASIBLE
    assert check_feasibility(Instance(_line(5), k=6, u=1)) is Feasibility.INFEASIBLE


def test_feasibility_matches_existence_of_capacity_partition():
    for n in range(1, 6):
        for k in range(1, 5):
            for u in range(1, 5):
                exists = any(
                    len(set(labels)) == k and max(labels.count(c) for c in range(k)) <= u
                    for labels in itertools.product(range(k), repeat=n)
                )
                feasible = check_feasibility(Instance(_line(n), k, u)) is Feasibility.FEASIBLE
                assert feasible == exists, (n, k, u)


def test_instance_rejects_non_integer_parameters():
    with pytest.raises(ValueError):
        Instance(_line(3), k=2, u=2.5)
    with pytest.raises(ValueError):
        Instance(_line(3), k=True, u=2)
    with pytest.raises(ValueError):
        Instance(_line(3), k=0, u=2)


def test_instance_rejects_non_finite_points():
    with pytest.raises(ValueError):
        Instance(np.array([[0.0, np.nan]]), k=1, u=1)
    with pytest.raises(ValueError):
        as_point([1.0, np.inf])


def test_instance_points_are_read_only():
    instance = Instance(_line(3), k=1, u=3)
    with pytest.raises(ValueError):
        instance.points[0, 0] = 5.0


def test_centroid_examples():
    assert np.array_equal(centroid([[0, 0], [2, 0]]), [1.0, 0.0])
    assert np.array_equal(centroid([[1, 2, 3]]), [1.0, 2.0, 3.0])
    assert np.array_equal(centroid([[0, 0], [1, 0], [0, 1], [1, 1]]), [0.5, 0.5])


def test_centroid_of_empty_cluster():
    with pytest.raises(EmptyClusterError, match="empty cluster has no centroid"):
        centroid([])


def test_cost_d_examples():
    pair = Instance(np.array([[0.0, 0.0], [2.0, 0.0]]), k=1, u=2)
    assert evaluate_cost_d(pair, Partition([0, 0], [[1.0, 0.0]])) == 2.0

    points = np.array([[0.0, 0.0], [5.0, 1.0], [2.0, 2.0]])
    identity = Partition([0, 1, 2], points)
    assert evaluate_cost_d(Instance(points, k=3, u=1), identity) == 0.0

    far = Instance(np.array([[0.0, 0.0], [3.0, 4.0]]), k=1, u=2)
    assert evaluate_cost_d(far, Partition([0, 0], [[0.0, 0.0]])) == 25.0


def test_cost_d_dimension_mismatch():
    instance = Instance(np.array([[0.0, 0.0], [2.0, 0.0]]), k=1, u=2)
    with pytest.raises(DimensionMismatchError):
        evaluate_cost_d(instance, Partition([0, 0], [[1.0, 0.0, 0.0]]))
    with pytest.raises(DimensionMismatchError):
        evaluate_cost_d(instance, Partition([0, 0, 0], [[1.0, 0.0]]))


def test_partition_sizes_and_capacity():
    partition = Partition([0, 0, 2], [[0.0], [1.0], [2.0]])
    assert partition.sizes().tolist() == [2, 0, 1]
    assert partition.respects_capacity(2)
    assert not partition.respects_capacity(1)
    with pytest.raises(ValueError):
        Partition([0, 3], [[0.0], [1.0]])


@given(
    cluster=arrays(np.float64, st.tuples(st.integers(1, 8), st.just(3)), elements=coords),
    other=arrays(np.float64, 3, elements=coords),
)
def test_centroid_minimizes_spread(cluster, other):
    ctr = centroid(cluster)
    at_centroid = float(((cluster - ctr) ** 2).sum())
    at_other = float(((cluster - other) ** 2).sum())
    assert at_centroid <= at_other + 1e-9 * max(1.0, at_other)


def test_cost_d_invariant_under_relabeling(rng):
    points = rng.normal(size=(12, 2))
    labels = rng.integers(0, 3, size=12)
    centers = rng.normal(size=(3, 2))
    instance = Instance(points, k=3, u=12)
    base = evaluate_cost_d(instance, Partition(labels, centers))

    perm = np.array([2, 0, 1])
    relabeled = Partition(perm[labels], centers[np.argsort(perm)])
    assert evaluate_cost_d(instance, relabeled) == base

    order = rng.permutation(12)
    shuffled = Instance(points[order], k=3, u=12)
    assert evaluate_cost_d(shuffled, Partition(labels[order], centers)) == pytest.approx(base)


def test_recenter_keeps_labels_and_never_raises_cost(rng):
    for _ in range(50):
        points = rng.normal(size=(10, 2))
        labels = rng.integers(0, 3, size=10)
        partition = Partition(labels, rng.normal(size=(3, 2)))
        instance = Instance(points, k=3, u=10)
        moved = recenter(instance, partition)
        assert np.array_equal(moved.labels, partition.labels)
        assert evaluate_cost_d(instance, moved) <= evaluate_cost_d(instance, partition)


def test_recenter_leaves_empty_cluster_center():
    instance = Instance(np.array([[0.0], [2.0]]), k=2, u=2)
    moved = recenter(instance, Partition([0, 0], [[5.0], [7.0]]))
    assert moved.centers.tolist() == [[1.0], [7.0]]
