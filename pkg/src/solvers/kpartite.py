"""Complete k-partite demands: sparsification and median-line recursion."""

from __future__ import annotations

import logging
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from src.errors import InstanceError
from src.geometry import Coord, Instance, Point, Solution, XY, midpoint, require_strict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SparsifyReport:
    removed: Tuple[str, ...] = ()
    rounds: int = 0


def _check(instance: Instance) -> None:
    missing = [p.id for p in instance.points if p.label is None]
    if missing:
        raise InstanceError(f"k-partite points without class: {missing[:5]}", field="points")
    require_strict(instance, rows_only=True)


class _Columns:
    """Points per column, sorted by y, for side-emptiness queries."""

    def __init__(self, points: List[Point]):
        columns: Dict[Coord, List[Point]] = {}
        for p in points:
            columns.setdefault(p.x, []).append(p)
        self.columns = {x: sorted(ps, key=lambda p: p.y) for x, ps in columns.items()}
        self.ys = {x: [p.y for p in ps] for x, ps in self.columns.items()}

    def side_clear(self, p: Point, lo: Coord, hi: Coord, other_label: str) -> bool:
        """No point other than p on {x(p)} × [lo, hi] outside class ``other_label``."""
        col, ys = self.columns[p.x], self.ys[p.x]
        for r in col[bisect_left(ys, lo) : bisect_right(ys, hi)]:
            if r.id != p.id and r.label != other_label:
                return False
        return True


def essential_demand(columns: _Columns, p: Point, q: Point) -> bool:
    """Both vertical sides of R(p, q) hold no other point outside the opposite endpoint's class."""
    if p.x == q.x or p.label == q.label:
        return False
    lo, hi = min(p.y, q.y), max(p.y, q.y)
    return columns.side_clear(p, lo, hi, q.label) and columns.side_clear(q, lo, hi, p.label)


def essential_points(points: List[Point]) -> Set[str]:
    columns = _Columns(points)
    found: Set[str] = set()
    for i, p in enumerate(points):
        for q in points[i + 1 :]:
            if (p.id not in found or q.id not in found) and essential_demand(columns, p, q):
                found.update((p.id, q.id))
    return found


def kpartite_sparsify(instance: Instance) -> Tuple[Instance, SparsifyReport]:
    """Remove redundant points one at a time, smallest (x, y) first, until every point is essential.

    Any feasible solution of the returned instance is feasible for the input.

    Raises:
        InstanceError: If a point lacks a class label or two points share a row.
    """
    _check(instance)
    points = sorted(instance.points, key=lambda p: (p.x, p.y))
    removed: List[str] = []
    rounds = 0
    while True:
        rounds += 1
        essential = essential_points(points)
        redundant = next((p for p in points if p.id not in essential), None)
        if redundant is None:
            break
        removed.append(redundant.id)
        points = [p for p in points if p.id != redundant.id]
    if removed:
        logger.debug("sparsify removed %d of %d points", len(removed), len(instance.points))
    survivors = instance.induced(p.id for p in points)
    return survivors, SparsifyReport(tuple(removed), rounds)


@dataclass
class KpartiteStats:
    root_points: int = 0
    root_columns: int = 0
    depth: int = 0
    projections: int = 0
    removed: List[str] = field(default_factory=list)


def _solve(instance: Instance, out: Set[XY], stats: KpartiteStats, depth: int) -> None:
    sparse, report = kpartite_sparsify(instance)
    stats.removed.extend(report.removed)
    if depth == 0:
        stats.root_points = len(sparse.points)
    xs = sorted({p.x for p in sparse.points})
    if depth == 0:
        stats.root_columns = len(xs)
    if len(xs) <= 1:
        return
    stats.depth = max(stats.depth, depth + 1)
    half = math.ceil(len(xs) / 2)
    line = midpoint(xs[half - 1], xs[half])
    for p in sparse.points:
        out.add((line, p.y))
        stats.projections += 1
    _solve(sparse.induced(p.id for p in sparse.points if p.x < line), out, stats, depth + 1)
    _solve(sparse.induced(p.id for p in sparse.points if p.x > line), out, stats, depth + 1)


def kpartite_solve(instance: Instance, stats: Optional[KpartiteStats] = None) -> Solution:
    """Sparsify, project every survivor onto the median vertical line, recurse on both sides.

    Raises:
        InstanceError: If a point lacks a class label or two points share a row.
    """
    _check(instance)
    stats = stats if stats is not None else KpartiteStats()
    out: Set[XY] = set()
    _solve(instance, out, stats, 0)
    return Solution.from_coords(out, instance)
