"""Test the end-to-end solver, its sweep and its guarantees."""

import threading

import numpy as np
import pytest

from hckm.compositions import count_compositions
from hckm.config import GeneratorSpec
from hckm.core.cost import evaluate_cost_d
from hckm.core.models import Instance, Partition
from hckm.errors import InfeasibleInstanceError
from hckm.geometry.voronoi import build_voronoi_index
from hckm.io.datasets import generate_instance
from hckm.io.results import solution_document
from hckm.observability.metrics import SweepMetrics
from hckm.oracle import exact_hckm
from hckm.solver import SolveOptions, index_for, ratio_bound, solve_hckm, verify_sandwich
from hckm.solver.sweep import evaluate_chunk, sweep
from hckm.subroutines import SubroutineConfig

BOUND = 69.36


def _solve(points, k, u, **options):
    return solve_hckm(Instance(points, k, u), SubroutineConfig.from_epsilon(0.36),
                      SolveOptions(**options))


def _random_feasible_labels(rng, n, k, u):
    slots = np.repeat(np.arange(k), u)
    return rng.permutation(slots)[:n]


def test_ratio_bound_examples():
    assert ratio_bound(1.0) == 69.0
    assert ratio_bound(1 + 0.36 / 36) == pytest.approx(69.36)
    assert ratio_bound(0.0, 1.0) == 33.0
    assert ratio_bound(1.0, 2.0) == 138.0


def test_two_far_pairs(two_pairs):
    solution = _solve(two_pairs, 2, 2)
    labels = solution.partition.labels
    assert labels[0] == labels[1] != labels[2] == labels[3]
    assert solution.cost_after_recenter.cost_d == pytest.approx(1.0)
    assert solution.advertised_bound == pytest.approx(BOUND)
    assert solution.complete


def test_tight_triple(tight_triple):
    solution = _solve(tight_triple, 2, 2)
    opt = exact_hckm(Instance(tight_triple, 2, 2)).opt_cost
    assert solution.partition.respects_capacity(2)
    assert solution.cost_after_recenter.cost_d <= BOUND * opt


def test_every_point_its_own_cluster(rng):
    points = rng.normal(size=(4, 2))
    solution = _solve(points, 4, 1)
    assert solution.cost_after_recenter.cost_d == 0.0
    assert sorted(solution.partition.labels.tolist()) == [0, 1, 2, 3]


def test_infeasible_instances_are_rejected():
    with pytest.raises(InfeasibleInstanceError, match="Infeasible instance"):
        _solve(np.zeros((10, 2)), 3, 3)
    with pytest.raises(InfeasibleInstanceError, match="Infeasible instance"):
        _solve(np.zeros((5, 2)), 6, 1)


def test_solution_fields(rng):
    points = rng.normal(size=(12, 2))
    solution = _solve(points, 3, 5)
    assert solution.winning_composition.k == 3
    assert solution.enumeration.evaluated == solution.compositions_evaluated
    assert solution.enumeration.total == count_compositions(
        solution.subroutine_stats.size, 3, solution.enumeration.per_slot_cap
    )
    assert solution.subroutine_stats.name == "overseed"
    before = solution.cost_before_recenter
    assert before.cost_h_scaled is not None
    assert 3 * before.cost_h >= before.cost_d - 1e-6
    index = index_for(Instance(points, 3, 5), solution)
    assert verify_sandwich(Instance(points, 3, 5), index, solution).holds


def test_no_prune_sweeps_every_composition(rng):
    points = rng.normal(size=(9, 2))
    pruned = _solve(points, 3, 5)
    full = _solve(points, 3, 5, prune=False)
    assert pruned.enumeration.per_slot_cap == 2
    assert full.enumeration.total == full.enumeration.unpruned
    assert full.compositions_evaluated > pruned.compositions_evaluated
    assert full.cost_before_recenter.cost_h_scaled == pruned.cost_before_recenter.cost_h_scaled


@pytest.mark.slow
def test_ratio_feasibility_and_recentering_on_random_instances():
    rng = np.random.default_rng(7)
    worst = 0.0
    runs = 0
    while runs < 100:
        k = int(rng.choice([2, 3]))
        u = int(rng.choice([2, 3, 4]))
        if rng.random() < 0.5:
            spec = GeneratorSpec(kind="uniform", n=int(rng.integers(k, 10)), seed=runs)
        else:
            per_blob = int(rng.integers(1, 9 // k + 1))
            spec = GeneratorSpec(count=k, per_blob=per_blob, sigma=0.5, spread=5, seed=runs)
        points = generate_instance(spec)
        if not k <= len(points) <= k * u:
            continue
        runs += 1
        instance = Instance(points, k, u)
        solution = solve_hckm(instance, SubroutineConfig(rng_seed=runs))
        opt = exact_hckm(instance).opt_cost
        after = solution.cost_after_recenter.cost_d
        assert after <= BOUND * opt + 1e-9
        assert after >= opt * (1 - 1e-9)
        assert solution.partition.k == k
        assert solution.partition.respects_capacity(u)
        assert after <= solution.cost_before_recenter.cost_d
        assert np.array_equal(solution.partition.labels, solution.partition_before_recenter.labels)
        if opt > 0:
            worst = max(worst, after / opt)
    assert worst <= BOUND


@pytest.mark.slow
def test_sandwich_on_random_feasible_partitions():
    rng = np.random.default_rng(8)
    for _ in range(1000):
        n = int(rng.integers(2, 15))
        k = int(rng.integers(1, 5))
        u = -(-n // k) + int(rng.integers(0, 2))
        points = rng.normal(size=(n, 2)) * rng.uniform(0.1, 10)
        instance = Instance(points, k, u)
        index = build_voronoi_index(instance, points[rng.choice(n, size=min(n, 3), replace=False)])
        partition = Partition(_random_feasible_labels(rng, n, k, u), rng.normal(size=(k, 2)) * 5)
        report = verify_sandwich(instance, index, partition)
        assert report.holds
        assert report.slack >= -1e-9 * max(1.0, report.cost_d)


@pytest.mark.slow
def test_worker_count_does_not_change_the_solution():
    points = generate_instance(GeneratorSpec(count=3, per_blob=8, sigma=1.0, spread=6, seed=4))
    instance = Instance(points, 3, 10)
    config = SubroutineConfig.from_epsilon(0.36, overseed_factor=0.5, rng_seed=9)
    one = solve_hckm(instance, config, SolveOptions(workers=1))
    eight = solve_hckm(instance, config, SolveOptions(workers=8))
    assert solution_document(one).deterministic_view() == \
        solution_document(eight).deterministic_view()


@pytest.mark.slow
def test_desk_scale_full_sweep():
    points = generate_instance(GeneratorSpec(kind="uniform", n=200, dim=2, spread=10, seed=1))
    instance = Instance(points, 4, 60)
    config = SubroutineConfig.from_epsilon(0.36, overseed_factor=0.5)
    solution = solve_hckm(instance, config)
    assert solution.subroutine_stats.size == 10
    assert solution.enumeration.total == 715
    assert solution.compositions_evaluated == 715
    assert solution.complete
    assert solution.wall_time < 60


def _small_index():
    rng = np.random.default_rng(10)
    points = rng.normal(size=(20, 2))
    instance = Instance(points, 3, 8)
    return build_voronoi_index(instance, points[:6])


def test_cancelled_chunk_keeps_best_so_far():
    index = _small_index()
    cancel = threading.Event()
    result = evaluate_chunk(index, 8, 3, 3, 0, 56, cancel, progress_every=5,
                            on_progress=lambda done: cancel.set())
    assert result.cancelled
    assert result.evaluated == 5
    assert 0 <= result.best_rank < 5


def test_sweep_cancelled_before_start():
    index = _small_index()
    cancel = threading.Event()
    cancel.set()
    metrics = SweepMetrics(compositions_total=count_compositions(6, 3, 3))
    outcome = sweep(index, 8, 3, 3, metrics, cancel=cancel)
    assert outcome.composition.counts == (3, 0, 0, 0, 0, 0)
    assert outcome.evaluated == 1
    assert not outcome.complete


def test_sweep_ties_go_to_earliest_composition():
    points = np.array([[0.0], [10.0]])
    instance = Instance(points, 1, 2)
    index = build_voronoi_index(instance, points)
    metrics = SweepMetrics(compositions_total=count_compositions(2, 1, 1))
    outcome = sweep(index, 2, 1, 1, metrics)
    assert outcome.composition.counts == (1, 0)
    assert outcome.rank == 0
    summary = metrics.summary()
    assert summary["compositions_evaluated"] == 2
    assert summary["chunks"] == 1


def test_cost_before_recentering_uses_the_winning_centers(rng):
    points = rng.normal(size=(9, 2))
    solution = _solve(points, 3, 3)
    before = Partition(solution.partition.labels, solution.winning_composition.centers(
        solution.representing))
    instance = Instance(points, 3, 3)
    assert evaluate_cost_d(instance, before) == solution.cost_before_recenter.cost_d
    assert solution.cost_after_recenter.cost_d <= solution.cost_before_recenter.cost_d


class _CancelAfter(threading.Event):
    """An event that reports itself set from the given poll on."""

    def __init__(self, polls):
        super().__init__()
        self._polls = polls

    def is_set(self):
        self._polls -= 1
        if self._polls < 0:
            self.set()
        return super().is_set()


def _assert_valid_partial(solution, instance):
    assert not solution.complete
    assert 1 <= solution.compositions_evaluated < solution.enumeration.total
    assert solution.partition.k == instance.k
    assert solution.partition.respects_capacity(instance.u)
    assert solution.winning_composition.k == instance.k
    assert solution.cost_after_recenter.cost_d <= solution.cost_before_recenter.cost_d


def test_cancel_during_sweep_returns_best_so_far():
    points = np.random.default_rng(10).normal(size=(20, 2))
    instance = Instance(points, 3, 8)
    solution = solve_hckm(instance, SubroutineConfig.from_epsilon(0.36),
                          SolveOptions(cancel=_CancelAfter(5)))
    _assert_valid_partial(solution, instance)
    assert solution.compositions_evaluated == 5
    assert solution.enumeration.chunks == 1


def test_cancel_parallel_sweep_returns_best_so_far():
    points = np.random.default_rng(11).normal(size=(20, 2))
    instance = Instance(points, 3, 8)
    cancel = threading.Event()
    cancel.set()
    solution = solve_hckm(instance, SubroutineConfig.from_epsilon(0.36),
                          SolveOptions(workers=2, cancel=cancel))
    _assert_valid_partial(solution, instance)


def test_large_coordinates_stay_in_fixed_point_range():
    points = np.random.default_rng(3).uniform(0, 5000, size=(300, 2))
    solution = solve_hckm(Instance(points, 2, 200), SubroutineConfig.from_epsilon(0.36))
    assert solution.complete
    assert solution.partition.respects_capacity(200)
    assert solution.cost_after_recenter.cost_d > 0


def test_certify_attaches_the_oracle_ratio(rng):
    points = rng.normal(size=(8, 2))
    instance = Instance(points, 3, 3)
    solution = solve_hckm(instance, SubroutineConfig.from_epsilon(0.36),
                          SolveOptions(certify=True))
    assert solution.oracle_opt == pytest.approx(exact_hckm(instance).opt_cost)
    assert solution.certified_ratio == pytest.approx(
        solution.cost_after_recenter.cost_d / solution.oracle_opt)
    assert 1.0 - 1e-9 <= solution.certified_ratio <= BOUND
    assert solution.lambda1 is not None


def test_certify_skips_instances_above_the_oracle_limit(rng):
    solution = _solve(rng.normal(size=(12, 2)), 3, 5, certify=True)
    assert solution.lambda1 is None
    assert solution.oracle_opt is None
    assert solution.certified_ratio is None
