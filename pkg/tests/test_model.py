from fractions import Fraction

import pytest

from src.errors import InstanceError
from src.geometry import (
    Demand,
    DemandKind,
    Instance,
    Point,
    Rect,
    Solution,
    as_coord,
    is_strict,
    materialize_demands,
    normalize,
    reflect_y,
    require_strict,
    split_monotone,
    x_groups,
)


def test_as_coord_collapses_integral_fractions():
    assert as_coord(Fraction(4, 2)) == 2
    assert isinstance(as_coord(Fraction(4, 2)), int)
    assert as_coord("1/3") == Fraction(1, 3)
    assert as_coord("2.5") == Fraction(5, 2)


@pytest.mark.parametrize("value", [0.5, True, "abc", "1/0"])
def test_as_coord_rejects_inexact_values(value):
    with pytest.raises(InstanceError):
        as_coord(value)


def test_instance_rejects_duplicate_ids_and_coordinates():
    with pytest.raises(InstanceError) as exc:
        Instance((Point("a", 0, 0), Point("a", 1, 1)))
    assert exc.value.field == "points"
    with pytest.raises(InstanceError):
        Instance((Point("a", 0, 0), Point("b", 0, 0)))


def test_instance_rejects_bad_demands():
    points = (Point("a", 0, 0), Point("b", 1, 1))
    with pytest.raises(InstanceError):
        Instance(points, (Demand("a", "zz"),))
    with pytest.raises(InstanceError):
        Instance(points, (Demand("a", "a"),))


def test_normalize_orients_and_drops_aligned_and_duplicates():
    a, b, c = Point("a", 0, 0), Point("b", 2, 3), Point("c", 0, 5)
    instance = Instance((a, b, c), (Demand("a", "b"), Demand("b", "a"), Demand("a", "c")))

    normalized, report = normalize(instance)

    assert normalized.demands == (Demand("a", "b"),)
    assert report.dropped_aligned == 1
    assert report.duplicates == 1


def test_normalize_strict_names_the_shared_row():
    instance = Instance((Point("a", 0, 4), Point("b", 3, 4)))
    with pytest.raises(InstanceError) as exc:
        normalize(instance, strict=True)
    assert "y=4" in str(exc.value)


def test_materialize_demands_per_kind():
    plain = [Point("p0", 0, 0), Point("p1", 1, 1), Point("p2", 5, 5)]
    assert materialize_demands(plain, DemandKind.UNIFORM) == (
        Demand("p0", "p1"),
        Demand("p0", "p2"),
        Demand("p1", "p2"),
    )
    assert materialize_demands(plain, DemandKind.UNIT_DISK, Fraction(2)) == (Demand("p0", "p1"),)

    disks = [Point(p.id, p.x, p.y, radius=Fraction(1)) for p in plain]
    assert materialize_demands(disks, DemandKind.DISK) == (Demand("p0", "p1"),)

    classes = [Point(p.id, p.x, p.y, label=label) for p, label in zip(plain, "AAB")]
    assert len(materialize_demands(classes, DemandKind.KPARTITE)) == 2


def test_materialize_demands_requires_kind_parameters():
    plain = [Point("p0", 0, 0), Point("p1", 1, 1)]
    with pytest.raises(InstanceError) as exc:
        Instance.build(plain, kind=DemandKind.UNIT_DISK)
    assert exc.value.field == "r"
    with pytest.raises(InstanceError):
        Instance.build(plain, kind=DemandKind.DISK)
    with pytest.raises(InstanceError):
        Instance.build(plain, kind=DemandKind.KPARTITE)
    with pytest.raises(InstanceError):
        Instance.build(plain, kind=DemandKind.UNIFORM, demands=[Demand("p0", "p1")])


def test_split_monotone_keeps_points_in_both_halves():
    points = (Point("a", 0, 0), Point("b", 1, 2), Point("c", 2, 1), Point("d", 3, -1))
    instance = Instance(points, (Demand("a", "b"), Demand("c", "d"), Demand("a", "c")))
    up, down = split_monotone(normalize(instance)[0])

    assert {d.ids() for d in up.demands} == {("a", "b"), ("a", "c")}
    assert {d.ids() for d in down.demands} == {("c", "d")}
    assert up.points == down.points == points


def test_x_groups_and_strictness():
    instance = Instance((Point("a", 1, 5), Point("b", 0, 2), Point("c", 1, 3)))
    groups = x_groups(instance)

    assert [g.x for g in groups] == [0, 1]
    assert groups[1].ids == ("c", "a")
    assert not is_strict(instance)
    assert is_strict(instance, rows_only=True)
    with pytest.raises(InstanceError):
        require_strict(instance)


def test_solution_from_coords_drops_inputs_and_duplicates():
    instance = Instance((Point("a", 0, 0), Point("b", 2, 2)))
    solution = Solution.from_coords([(1, 1), (0, 0), (Fraction(2, 2), 1), (0, 2)], instance)

    assert solution.coords == ((0, 2), (1, 1))
    assert [q.id for q in solution.aux] == ["q0", "q1"]
    assert len(solution.union(Solution.from_coords([(5, 5)]), instance=instance)) == 3


def test_rect_interiors_and_reflection():
    r = Rect.of((2, 0), (0, 2))
    assert (r.xlo, r.xhi, r.ylo, r.yhi) == (0, 2, 0, 2)
    assert r.contains((0, 1)) and not r.interior_contains((0, 1))
    assert not r.interiors_intersect(Rect.of((2, 0), (3, 1)))
    assert Rect.of((0, 0), (0, 3)).degenerate

    mirrored = reflect_y(Instance((Point("a", 1, 3),)))
    assert mirrored.points[0].xy == (1, -3)
