"""Grid-based algorithms for unit-disk, disk and two-disk demands."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Set, Tuple

from src.config import settings
from src.errors import InfeasibleSolution, InstanceError
from src.geometry import (
    Coord,
    Demand,
    DemandKind,
    Grid,
    Instance,
    Point,
    Solution,
    XY,
    require_strict,
)
from src.verifier import verify_solution

from .greedy import greedy_points
from .kpartite import kpartite_solve

logger = logging.getLogger(__name__)


@dataclass
class DiskStats:
    """Sizes of the two parts of a grid solution (before they are merged)."""

    inner: int = 0
    outer: int = 0
    levels: int = 0
    cells: int = 0


def _cells(grid: Grid, points: Iterable[Point]) -> Dict[Tuple[int, int], List[Point]]:
    cells: Dict[Tuple[int, int], List[Point]] = {}
    for p in points:
        cells.setdefault(grid.cell_of(p.xy), []).append(p)
    return cells


def _inner(grid: Grid, instance: Instance) -> Set[XY]:
    """Greedy inside every occupied cell; all pairs inside one cell are demanded."""
    out: Set[XY] = set()
    for members in _cells(grid, instance.points).values():
        if len(members) > 1:
            out.update(greedy_points(p.xy for p in members))
    return out


def _crossing(grid: Grid, instance: Instance) -> Set[str]:
    """Ids of points with a demand leaving their cell."""
    ids: Set[str] = set()
    for demand in instance.demands:
        a, b = instance.endpoints(demand)
        if grid.cell_of(a.xy) != grid.cell_of(b.xy):
            ids.update(demand.ids())
    return ids


def _project(p: Point, xs: Iterable[Coord], ys: Iterable[Coord]) -> Set[XY]:
    return {(x, p.y) for x in xs} | {(p.x, y) for y in ys}


def _unit_radius(instance: Instance) -> Fraction:
    if instance.kind is DemandKind.UNIT_DISK:
        if instance.radius is None:
            raise InstanceError("unit-disk instance without radius", field="r")
        return Fraction(instance.radius)
    if instance.kind is DemandKind.DISK:
        radii = {p.radius for p in instance.points}
        if len(radii) == 1:
            return 2 * Fraction(radii.pop())
        raise InstanceError(f"disk instance has {len(radii)} distinct radii, expected 1", field="points")
    raise InstanceError(f"unit-disk solver got a {instance.kind.value} instance", field="kind")


def unit_disk_solve(instance: Instance, stats: Optional[DiskStats] = None) -> Solution:
    """Per-cell greedy on an (r/2)-grid plus projections onto every line within r.

    Disk instances whose radii are all equal are accepted with r = 2 * radius.

    Raises:
        InstanceError: If the radius is missing or the instance shares rows or columns.
    """
    r = _unit_radius(instance)
    require_strict(instance)
    if r <= 0:
        raise InstanceError(f"radius must be positive, got {r}", field="r")
    grid = Grid.avoiding(instance.coords, r / 2)
    inner = _inner(grid, instance)
    outer: Set[XY] = set()
    for pid in sorted(_crossing(grid, instance)):
        p = instance.point(pid)
        outer |= _project(p, *grid.lines_within(p.xy, r))
    if stats is not None:
        stats.inner, stats.outer, stats.levels = len(inner), len(outer), 1
        stats.cells = len(_cells(grid, instance.points))
    logger.debug("unit-disk: %d inner points, %d projections", len(inner), len(outer))
    return Solution.from_coords(inner | outer, instance)


def _levels(radii: List[Fraction]) -> Tuple[int, int]:
    """h maximal with 2^h <= min r, k minimal with max r <= 2^(k-1)."""
    low, high = min(radii), max(radii)
    h = 0
    while 2 ** (h + 1) <= low:
        h += 1
    k = 1
    while Fraction(2) ** (k - 1) < high:
        k += 1
    return h, k


def disk_solve(
    instance: Instance,
    dense: Optional[bool] = None,
    stats: Optional[DiskStats] = None,
) -> Solution:
    """Nested power-of-two grids Γ_h ⊆ ... ⊆ Γ_k on one origin.

    Default mode projects every point with a cross-cell demand onto the two
    closest lines of each level in all four directions. Dense mode projects
    it onto every line of the finest grid within r_p plus one finest cell.
    Demands inside a Γ_h cell are covered by the greedy.

    Raises:
        InstanceError: On a non-disk instance or a radius below 1.
        InfeasibleSolution: If the construction misses a demand.
    """
    if instance.kind is not DemandKind.DISK:
        raise InstanceError(f"disk solver got a {instance.kind.value} instance", field="kind")
    require_strict(instance)
    radii = [Fraction(p.radius) for p in instance.points]
    if not radii:
        return Solution()
    bad = [p.id for p in instance.points if p.radius < 1]
    if bad:
        raise InstanceError(f"radii must be at least 1: {bad[:5]}", field="points")
    dense = settings.DENSE_PROJECTION if dense is None else dense

    h, k = _levels(radii)
    finest = Grid.avoiding(instance.coords, Fraction(2) ** (h - 1))
    inner = _inner(finest, instance)
    outer: Set[XY] = set()
    for pid in sorted(_crossing(finest, instance)):
        p = instance.point(pid)
        if dense:
            outer |= _project(p, *finest.lines_within(p.xy, Fraction(p.radius) + finest.cell))
            continue
        for level in range(h, k + 1):
            grid = finest.coarsen(2 ** (level - h))
            outer |= _project(p, *grid.closest_lines(p.xy))

    if stats is not None:
        stats.inner, stats.outer, stats.levels = len(inner), len(outer), k - h + 1
        stats.cells = len(_cells(finest, instance.points))
    solution = Solution.from_coords(inner | outer, instance)
    report = verify_solution(instance, solution)
    if not report.feasible:
        mode = "dense" if dense else "default"
        raise InfeasibleSolution(
            f"disk_solve ({mode} projection) left {len(report.violated)} demands unsatisfied",
            violated=report.violated,
        )
    logger.debug("disk: levels %d..%d, %d inner, %d projections", h, k, len(inner), len(outer))
    return solution


def _relabel(instance: Instance, ids: Iterable[str], kind: DemandKind, radius: Fraction) -> Instance:
    keep = set(ids)
    points = [Point(p.id, p.x, p.y) for p in instance.points if p.id in keep]
    return Instance.build(points, kind=kind, radius=radius)


def two_disk_solve(instance: Instance) -> Solution:
    """Two radius classes A (smaller) and B.

    A×A and B×B demands go to ``unit_disk_solve`` with thresholds 2r_A and
    2r_B. For A×B demands a grid of cell r_B/2 is laid out: A points take the
    two closest lines per direction, B points every line within r_A + r_B,
    and same-cell A×B pairs are solved as complete bipartite instances.

    Raises:
        InstanceError: On a non-disk instance or more than two distinct radii.
    """
    if instance.kind is not DemandKind.DISK:
        raise InstanceError(f"two-disk solver got a {instance.kind.value} instance", field="kind")
    require_strict(instance)
    radii = sorted({Fraction(p.radius) for p in instance.points})
    if len(radii) > 2:
        raise InstanceError(f"expected at most two distinct radii, got {len(radii)}", field="points")
    if not radii:
        return Solution()
    r_b = radii[-1]
    r_a = radii[0] if len(radii) == 2 else None
    a_ids = [p.id for p in instance.points if r_a is not None and p.radius == r_a]
    b_ids = [p.id for p in instance.points if p.radius == r_b]

    coords: Set[XY] = set()
    if len(b_ids) > 1:
        coords.update(unit_disk_solve(_relabel(instance, b_ids, DemandKind.UNIT_DISK, 2 * r_b)).coords)
    if r_a is None:
        return Solution.from_coords(coords, instance)
    if len(a_ids) > 1:
        coords.update(unit_disk_solve(_relabel(instance, a_ids, DemandKind.UNIT_DISK, 2 * r_a)).coords)

    a_set = set(a_ids)
    cross = [d for d in instance.demands if (d.a in a_set) != (d.b in a_set)]
    grid = Grid.avoiding(instance.coords, r_b / 2)
    same_cell: Dict[Tuple[int, int], Set[str]] = {}
    for demand in cross:
        a, b = instance.endpoints(demand)
        cell = grid.cell_of(a.xy)
        if cell == grid.cell_of(b.xy):
            same_cell.setdefault(cell, set()).update(demand.ids())
            continue
        for p in (a, b):
            if p.id in a_set:
                coords |= _project(p, *grid.closest_lines(p.xy))
            else:
                coords |= _project(p, *grid.lines_within(p.xy, r_a + r_b))

    for cell in sorted(same_cell):
        members = [
            Point(pid, instance.point(pid).x, instance.point(pid).y, label="A" if pid in a_set else "B")
            for pid in sorted(same_cell[cell])
        ]
        coords.update(kpartite_solve(Instance.build(members, kind=DemandKind.KPARTITE)).coords)
    logger.debug("two-disk: %d cross demands, %d same-cell groups", len(cross), len(same_cell))
    return Solution.from_coords(coords, instance)
