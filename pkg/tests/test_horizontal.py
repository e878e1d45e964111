import math
import random

import pytest

from helpers import mixed_instance
from src.bounds import boundary_is
from src.errors import InstanceError
from src.generators import gen_diagonal, gen_random, gen_thin
from src.geometry import Demand, Instance, Point, normalize, split_monotone, x_groups
from src.solvers import demand_rows, horizontal_dc, horizontal_half, horizontal_manhattan
from src.verifier import verify_solution


def test_single_demand_projects_onto_the_row():
    instance = Instance((Point("a", 0, 0), Point("b", 4, 4)), (Demand("a", "b"),))

    solution = horizontal_dc(instance, [2])

    assert solution.coords == ((0, 2), (4, 2))
    assert verify_solution(instance, solution).feasible


def test_rows_must_hit_every_demand():
    instance = Instance((Point("a", 0, 0), Point("b", 4, 4)), (Demand("a", "b"),))
    with pytest.raises(InstanceError):
        horizontal_dc(instance, [7])


def test_stacked_demands():
    points = (Point("a", 0, 0), Point("b", 1, 1), Point("c", 2, 5), Point("d", 3, 6))
    instance = Instance(points, (Demand("a", "b"), Demand("c", "d")))

    assert demand_rows(instance) == [1, 6]
    solution = horizontal_half(instance)
    assert len(solution) <= 4
    assert verify_solution(instance, solution).feasible


def test_one_column_needs_nothing():
    instance = Instance((Point("a", 3, 0), Point("b", 3, 5)), (Demand("a", "b"),))
    assert len(horizontal_manhattan(instance)) == 0


def test_diagonal_family_within_bound():
    instance = gen_diagonal(4)
    solution = horizontal_manhattan(instance)

    assert verify_solution(instance, solution).feasible
    assert len(solution) <= 2 * (1 + math.ceil(math.log2(4))) * 4


def test_uniform_instance_feasible():
    instance = gen_random(5, 1.0, seed=4)
    assert verify_solution(instance, horizontal_manhattan(instance)).feasible


def test_mixed_instances_with_shared_lines_feasible():
    rng = random.Random(8)
    for _ in range(20):
        instance = mixed_instance(rng, 8, 0.4)
        assert verify_solution(instance, horizontal_manhattan(instance)).feasible


@pytest.mark.parametrize("s", [2, 3, 4, 5, 8, 16])
def test_thin_halves_within_log_bound(s):
    for seed in range(40):
        instance = gen_thin(30 + seed % 3 * 10, s, 0.3, seed)
        up, _ = split_monotone(normalize(instance)[0])
        g = len(x_groups(up))
        cost = len(horizontal_half(up))
        assert cost <= 2 * (1 + math.ceil(math.log2(max(g, 1)))) * boundary_is(up)[0]
        assert verify_solution(instance, horizontal_manhattan(instance)).feasible
