import math

import pytest

from src.bounds import boundary_is
from src.errors import InstanceError
from src.generators import gen_kpartite
from src.geometry import DemandKind, Instance, Point, normalize
from src.solvers import KpartiteStats, get_solver, kpartite_solve, kpartite_sparsify
from src.verifier import verify_solution


def _build(*specs) -> Instance:
    points = [Point(pid, x, y, label=label) for pid, x, y, label in specs]
    return Instance.build(points, kind=DemandKind.KPARTITE)


def test_single_pair_is_essential():
    instance = _build(("a", 0, 0, "A"), ("b", 2, 3, "B"))

    sparse, report = kpartite_sparsify(instance)
    solution = kpartite_solve(instance)

    assert report.removed == ()
    assert len(sparse.points) == 2
    assert len(solution) <= 2
    assert verify_solution(instance, solution).feasible


def test_blocked_side_makes_point_redundant():
    instance = _build(("a", 0, 0, "A"), ("b", 0, 1, "C"), ("c", 3, 3, "B"))

    sparse, report = kpartite_sparsify(instance)

    assert report.removed == ("a",)
    assert {p.id for p in sparse.points} == {"b", "c"}
    assert verify_solution(instance, kpartite_solve(instance)).feasible


def test_point_without_cross_demand_removed():
    instance = _build(("a", 0, 0, "A"), ("m", 0, 1, "B"), ("c", 3, 3, "B"))

    _, report = kpartite_sparsify(instance)

    assert report.removed == ("m",)
    assert report.rounds == 2


def test_single_column_needs_nothing():
    instance = _build(("a", 0, 0, "A"), ("b", 0, 2, "B"), ("c", 0, 5, "A"))
    assert len(kpartite_solve(instance)) == 0


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("columns", [None, 5])
def test_random_instances_feasible(k, columns):
    for seed in range(4):
        instance = gen_kpartite(24, k, seed, columns=columns)
        stats = KpartiteStats()

        solution = kpartite_solve(instance, stats=stats)

        assert verify_solution(instance, solution).feasible
        assert stats.root_points <= len(instance.points)


@pytest.mark.slow
@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("columns", [None, 4, 8])
def test_sparsified_points_bounded_by_independent_sides(k, columns):
    for seed in range(20):
        instance = gen_kpartite(8 + seed % 33, k, seed, columns=columns)
        sparse, _ = kpartite_sparsify(instance)

        assert len(sparse.points) <= 8 * boundary_is(normalize(sparse)[0])[0]
        for name in ("horizontal", "vertical", "kpartite"):
            solution = get_solver(name).solve(sparse).solution
            assert verify_solution(instance, solution).feasible


@pytest.mark.parametrize("k", [2, 3])
def test_cost_within_log_columns_times_root_is(k):
    for seed in range(10):
        instance = gen_kpartite(30, k, seed, columns=4 + seed)
        stats = KpartiteStats()

        solution = kpartite_solve(instance, stats=stats)

        sparse, _ = kpartite_sparsify(instance)
        root_is = boundary_is(normalize(sparse)[0])[0]
        levels = math.ceil(math.log2(max(stats.root_columns, 1)))
        assert len(solution) <= stats.root_points * levels
        assert len(solution) <= 8 * (levels + 1) * root_is


@pytest.mark.slow
def test_feasibility_gate():
    solver = get_solver("kpartite")
    for seed in range(200):
        instance = gen_kpartite(10 + seed % 51, 2 + seed % 2, seed, columns=None if seed % 3 else 6)
        assert verify_solution(instance, solver.solve(instance).solution).feasible


def test_rejects_unlabelled_points_and_shared_rows():
    with pytest.raises(InstanceError):
        kpartite_solve(Instance((Point("a", 0, 0), Point("b", 1, 1))))
    with pytest.raises(InstanceError):
        kpartite_solve(_build(("a", 0, 0, "A"), ("b", 2, 0, "B")))
