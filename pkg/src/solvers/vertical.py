"""Vertical divide and conquer over strips of x-groups."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Set

from src.bounds import boundary_is
from src.config import settings
from src.errors import InstanceError
from src.geometry import (
    Instance,
    Solution,
    StripRelation,
    XY,
    balanced_strips,
    inter_strip_instance,
    intra_strip_instances,
    midpoint,
    normalize,
    x_groups,
)
from src.geometry.strips import relation

from .horizontal import horizontal_manhattan

logger = logging.getLogger(__name__)


@dataclass
class VerticalStats:
    """Counters filled in by ``vertical_manhattan``.

    ``inter_bound`` sums 4(1 + ceil(log2 s')) * IS over every inter-strip
    instance, s' being that instance's x-group count.
    """

    depth: int = 0
    calls: int = 0
    projections: int = 0
    inter_points: int = 0
    inter_is: int = 0
    inter_bound: int = 0


def default_strips(n: int, g: int) -> int:
    """2^ceil(sqrt(log2 n)) clamped to [2, g]."""
    if n <= 1:
        return 2
    s = 2 ** math.ceil(math.sqrt(math.log2(n)))
    return max(2, min(s, g))


def _vertical(
    instance: Instance,
    s: int,
    only_demanded: bool,
    stats: VerticalStats,
    depth: int,
    out: Set[XY],
) -> None:
    groups = x_groups(instance)
    if len(groups) <= 1:
        return
    stats.calls += 1
    stats.depth = max(stats.depth, depth)
    sub = balanced_strips(instance, s)
    for part in intra_strip_instances(instance, sub):
        _vertical(part, s, only_demanded, stats, depth + 1, out)

    inter, projections = inter_strip_instance(instance, sub)
    inter_solution = horizontal_manhattan(inter)
    out.update(inter_solution.coords)

    if only_demanded:
        added: Set[XY] = set()
        for demand in instance.demands:
            if relation(instance, sub, demand) is StripRelation.SAME:
                continue
            a, b = instance.endpoints(demand)
            if a.x > b.x:
                a, b = b, a
            added.add(projections.right[a.id].xy)
            added.add(projections.left[b.id].xy)
    else:
        added = {p.xy for p in projections.all_points()}
    out.update(added)

    inter_is = boundary_is(inter)[0]
    inter_groups = len(x_groups(inter))
    stats.projections += len(added)
    stats.inter_points += len(inter_solution)
    stats.inter_is += inter_is
    stats.inter_bound += 4 * (1 + math.ceil(math.log2(max(inter_groups, 1)))) * inter_is
    logger.debug(
        "depth %d: %d strips, %d projections, %d inter-strip points",
        depth,
        sub.num_strips,
        len(added),
        len(inter_solution),
    )


def vertical_manhattan(
    instance: Instance,
    s: Optional[int] = None,
    project_only_demanded: Optional[bool] = None,
    stats: Optional[VerticalStats] = None,
) -> Solution:
    """Strip recursion: intra-strip instances recursively, the inter-strip instance horizontally.

    Args:
        instance: Any instance; it is normalized first.
        s: Strips per level. Defaults to ``settings.DEFAULT_STRIPS`` or the
            2^ceil(sqrt(log2 n)) rule.
        project_only_demanded: Add only projections used by a cross-strip
            demand instead of all of them.
        stats: Receives per-run counters when given.

    Raises:
        InstanceError: If ``s < 2``.
    """
    instance, _ = normalize(instance)
    if s is None:
        s = settings.DEFAULT_STRIPS
    if s is None:
        s = default_strips(len(instance.points), len(x_groups(instance)))
    if s < 2:
        raise InstanceError(f"strip count must be at least 2, got {s}", field="s")
    if project_only_demanded is None:
        project_only_demanded = settings.PROJECT_ONLY_DEMANDED
    stats = stats if stats is not None else VerticalStats()
    out: Set[XY] = set()
    _vertical(instance, s, project_only_demanded, stats, 0, out)
    return Solution.from_coords(out, instance)


def _naive(instance: Instance, out: Set[XY]) -> None:
    groups = x_groups(instance)
    if len(groups) <= 1:
        return
    half = len(groups) // 2
    line = midpoint(groups[half - 1].x, groups[half].x)
    left = {pid for g in groups[:half] for pid in g.ids}
    for demand in instance.demands:
        if (demand.a in left) != (demand.b in left):
            a, b = instance.endpoints(demand)
            out.add((line, a.y))
            out.add((line, b.y))
    _naive(instance.induced(left), out)
    _naive(instance.induced(p.id for p in instance.points if p.id not in left), out)


def naive_vertical_dc(instance: Instance) -> Solution:
    """Halve the x-groups and project the endpoints of every crossing demand onto the split line."""
    instance, _ = normalize(instance)
    out: Set[XY] = set()
    _naive(instance, out)
    return Solution.from_coords(out, instance)
