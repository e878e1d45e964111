from fractions import Fraction

import pytest

from src.errors import InstanceError
from src.generators import gen_disk, gen_unit_disk
from src.geometry import DemandKind, Grid, Instance, Point
from src.solvers import DiskStats, SolverOptions, disk_solve, exact_opt, get_solver, two_disk_solve, unit_disk_solve
from src.verifier import verify_solution


@pytest.mark.parametrize("seed", range(5))
def test_unit_disk_feasible_with_bounded_projections(seed):
    instance = gen_unit_disk(30, 4, seed)
    stats = DiskStats()

    solution = unit_disk_solve(instance, stats=stats)

    assert verify_solution(instance, solution).feasible
    assert stats.outer <= 8 * len(instance.points)
    assert stats.levels == 1


def test_same_cell_pair_uses_the_greedy():
    instance = Instance.build([Point("a", 0, 0), Point("b", 1, 1)], kind=DemandKind.UNIT_DISK, radius=Fraction(4))
    stats = DiskStats()

    solution = unit_disk_solve(instance, stats=stats)

    assert len(solution) == 1
    assert stats.outer == 0
    assert verify_solution(instance, solution).feasible


def test_equal_radius_disks_accepted_as_unit_disk():
    instance = gen_disk(15, 3, radii=(2,))
    assert verify_solution(instance, unit_disk_solve(instance)).feasible


def test_unit_disk_rejects_other_kinds():
    with pytest.raises(InstanceError):
        unit_disk_solve(Instance((Point("a", 0, 0),)))
    mixed = [Point("a", 0, 0, radius=Fraction(1)), Point("b", 1, 2, radius=Fraction(2))]
    with pytest.raises(InstanceError):
        unit_disk_solve(Instance.build(mixed, kind=DemandKind.DISK))


@pytest.mark.parametrize("dense", [False, True])
@pytest.mark.parametrize("seed", range(4))
def test_disk_feasible_on_two_levels(dense, seed):
    instance = gen_disk(25, seed, radii=(1, 4))
    stats = DiskStats()

    solution = disk_solve(instance, dense=dense, stats=stats)

    assert verify_solution(instance, solution).feasible
    assert stats.levels >= 2


def test_disk_log_uniform_radii():
    instance = gen_disk(30, 5, max_radius=16, span=60)
    assert verify_solution(instance, disk_solve(instance)).feasible


def test_disk_equal_radii_single_scale():
    instance = gen_disk(20, 1, radii=(1,))
    assert verify_solution(instance, disk_solve(instance)).feasible


def test_disk_rejects_small_radius_and_other_kinds():
    with pytest.raises(InstanceError):
        disk_solve(gen_disk(5, 0, radii=(Fraction(1, 2),)))
    with pytest.raises(InstanceError):
        disk_solve(gen_unit_disk(5, 2, 0))


@pytest.mark.parametrize("seed", range(4))
def test_two_disk_feasible(seed):
    instance = gen_disk(20, seed, radii=(1, 3))
    assert verify_solution(instance, two_disk_solve(instance)).feasible


def test_two_disk_cross_demand_in_different_cells():
    points = [Point("a", 0, 0, radius=Fraction(1)), Point("b", 2, 3, radius=Fraction(4))]
    instance = Instance.build(points, kind=DemandKind.DISK)

    assert len(instance.demands) == 1
    assert verify_solution(instance, two_disk_solve(instance)).feasible


def test_two_disk_single_radius():
    instance = gen_disk(12, 2, radii=(2,))
    assert verify_solution(instance, two_disk_solve(instance)).feasible


def test_two_disk_rejects_three_radii():
    points = [Point(f"p{i}", i, 2 * i, radius=Fraction(i + 1)) for i in range(3)]
    with pytest.raises(InstanceError):
        two_disk_solve(Instance.build(points, kind=DemandKind.DISK))


@pytest.mark.parametrize("seed", range(10))
def test_unit_disk_inner_within_twice_the_cell_optima(seed):
    instance = gen_unit_disk(12, 12, seed, span=36)
    stats = DiskStats()

    unit_disk_solve(instance, stats=stats)

    grid = Grid.avoiding(instance.coords, instance.radius / 2)
    cells = {}
    for p in instance.points:
        cells.setdefault(grid.cell_of(p.xy), []).append(p.id)
    assert max(len(ids) for ids in cells.values()) <= 6
    cell_opt = sum(exact_opt(instance.induced(ids), cap=64)[0] for ids in cells.values())
    assert stats.inner <= 2 * cell_opt
    assert stats.outer <= 8 * len(instance.points)


@pytest.mark.slow
@pytest.mark.parametrize(
    "name, generate",
    [
        ("unit-disk", lambda n, seed: gen_unit_disk(n, 4, seed)),
        ("disk", lambda n, seed: gen_disk(n, seed, max_radius=16)),
        ("two-disk", lambda n, seed: gen_disk(n, seed, radii=(1, 3))),
    ],
)
def test_feasibility_gate(name, generate):
    solver = get_solver(name)
    options = SolverOptions(dense_projection=True)
    for seed in range(200):
        instance = generate(10 + seed % 51, seed)
        assert verify_solution(instance, solver.solve(instance, options).solution).feasible
