import random

import pytest

from src.errors import InstanceError
from src.generators import gen_random
from src.geometry import Demand, DemandKind, Instance, Point
from src.solvers import exact_opt, get_solver, greedy_points, greedy_uniform
from src.verifier import arboreally_satisfied, verify_solution


def test_two_points_need_one_corner():
    instance = Instance.build([Point("a", 0, 0), Point("b", 1, 1)], kind=DemandKind.UNIFORM)
    assert len(greedy_uniform(instance)) == 1


def test_diagonal_staircase():
    points = [(i, i) for i in range(6)]
    added = greedy_points(points)

    assert added == [(i, i + 1) for i in range(5)]
    assert arboreally_satisfied(points + added, strict=False)


def test_output_is_arboreally_satisfied():
    rng = random.Random(2)
    for _ in range(20):
        n = rng.randint(2, 12)
        points = list(zip(rng.sample(range(30), n), rng.sample(range(30), n)))
        assert arboreally_satisfied(points + greedy_points(points), strict=False)


@pytest.mark.slow
def test_within_twice_the_optimum():
    for seed in range(200):
        n = 2 + seed % 6
        instance = gen_random(n, 1.0, seed)
        opt, _ = exact_opt(instance, cap=64)
        solution = greedy_uniform(instance)

        assert verify_solution(instance, solution).feasible
        assert len(solution) <= 2 * opt
        assert arboreally_satisfied([p.xy for p in instance.points] + list(solution.coords), strict=False)


def test_explicit_complete_instance_accepted():
    points = [Point("a", 0, 0), Point("b", 1, 2), Point("c", 2, 1)]
    demands = [Demand("a", "b"), Demand("a", "c"), Demand("b", "c")]
    instance = Instance(tuple(points), tuple(demands))

    assert verify_solution(instance, greedy_uniform(instance)).feasible


def test_rejects_partial_demands_and_shared_lines():
    points = (Point("a", 0, 0), Point("b", 1, 2), Point("c", 2, 1))
    with pytest.raises(InstanceError):
        greedy_uniform(Instance(points, (Demand("a", "b"),)))
    shared = Instance.build([Point("a", 0, 0), Point("b", 0, 2)], kind=DemandKind.UNIFORM)
    with pytest.raises(InstanceError):
        greedy_uniform(shared)


@pytest.mark.slow
def test_feasibility_gate():
    solver = get_solver("greedy")
    for seed in range(200):
        instance = gen_random(2 + seed % 59, 1.0, seed)
        assert verify_solution(instance, solver.solve(instance).solution).feasible
