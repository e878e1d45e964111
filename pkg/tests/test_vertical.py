import math
from fractions import Fraction

import pytest

from src.config import settings
from src.errors import InstanceError
from src.generators import gen_random
from src.geometry import Demand, Instance, Point, x_groups
from src.solvers import SolverOptions, VerticalStats, default_strips, get_solver, naive_vertical_dc, vertical_manhattan
from src.verifier import verify_solution


def _levels(g: int, s: int) -> int:
    levels = 0
    while s**levels < g:
        levels += 1
    return levels


def test_default_strips():
    assert default_strips(16, 100) == 4
    assert default_strips(1, 5) == 2
    assert default_strips(1024, 3) == 3
    assert default_strips(1024, 100) == 16


def test_single_group_is_empty():
    instance = Instance((Point("a", 0, 0), Point("b", 0, 3)), (Demand("a", "b"),))
    assert len(vertical_manhattan(instance, s=2)) == 0
    assert len(naive_vertical_dc(instance)) == 0


def test_two_groups_project_onto_the_boundary():
    instance = Instance((Point("a", 0, 0), Point("b", 1, 1)), (Demand("a", "b"),))

    solution = vertical_manhattan(instance, s=2)

    assert len(solution) == 2
    assert {x for x, _ in solution.coords} == {Fraction(1, 2)}
    assert verify_solution(instance, solution).feasible


def test_strip_count_below_two_rejected():
    with pytest.raises(InstanceError):
        vertical_manhattan(gen_random(6, 0.5, seed=1), s=1)


def test_configured_strip_count_is_used(monkeypatch):
    monkeypatch.setattr(settings, "DEFAULT_STRIPS", 1)
    with pytest.raises(InstanceError):
        vertical_manhattan(gen_random(6, 0.5, seed=1))


@pytest.mark.parametrize("s", [2, 3, 4])
@pytest.mark.parametrize("only_demanded", [False, True])
def test_random_instances_feasible_and_bounded(s, only_demanded):
    for seed in range(3):
        instance = gen_random(40, 0.2, seed)
        stats = VerticalStats()

        solution = vertical_manhattan(instance, s=s, project_only_demanded=only_demanded, stats=stats)

        assert verify_solution(instance, solution).feasible
        assert stats.inter_points <= stats.inter_bound
        g = len(x_groups(instance))
        assert stats.projections <= 2 * len(instance.points) * _levels(g, s)
        assert stats.depth < _levels(g, s)


def test_only_demanded_projects_less():
    instance = gen_random(30, 0.1, seed=9)
    full, lean = VerticalStats(), VerticalStats()

    vertical_manhattan(instance, s=3, project_only_demanded=False, stats=full)
    vertical_manhattan(instance, s=3, project_only_demanded=True, stats=lean)

    assert lean.projections <= full.projections


def test_naive_single_crossing_demand():
    instance = Instance((Point("a", 0, 0), Point("b", 1, 1)), (Demand("a", "b"),))
    solution = naive_vertical_dc(instance)

    assert len(solution) == 2
    assert verify_solution(instance, solution).feasible


def test_naive_uniform_feasible_and_bounded():
    instance = gen_random(8, 1.0, seed=3)
    solution = naive_vertical_dc(instance)

    assert verify_solution(instance, solution).feasible
    assert len(solution) <= 2 * 8 * math.ceil(math.log2(8))


def test_adjacent_strip_demand_uses_the_shared_boundary():
    points = (Point("p0", 0, 0), Point("p1", 1, 1), Point("p2", 2, 3), Point("p3", 3, 2))
    instance = Instance(points, (Demand("p1", "p2"),))
    stats = VerticalStats()

    solution = vertical_manhattan(instance, s=4, project_only_demanded=True, stats=stats)

    assert set(solution.coords) == {(Fraction(3, 2), 1), (Fraction(3, 2), 3)}
    assert stats.inter_points == 0
    assert verify_solution(instance, solution).feasible


@pytest.mark.slow
@pytest.mark.parametrize("name", ["horizontal", "vertical", "naive"])
@pytest.mark.parametrize("only_demanded", [False, True])
def test_feasibility_gate(name, only_demanded):
    solver = get_solver(name)
    options = SolverOptions(project_only_demanded=only_demanded)
    for seed in range(200):
        instance = gen_random(10 + seed % 51, 0.05 + (seed % 4) * 0.1, seed)
        assert verify_solution(instance, solver.solve(instance, options).solution).feasible
