"""Vertical strip subdivisions and the inter-/intra-strip instances built on them."""

from __future__ import annotations

import logging
import math
from bisect import bisect_right
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from src.errors import InstanceError

from .model import Coord, Demand, Instance, Point, XY, midpoint, normalize, x_groups

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StripSubdivision:
    """Strictly increasing vertical boundaries; strip i lies between boundary i-1 and i."""

    boundaries: Tuple[Coord, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        for left, right in zip(self.boundaries, self.boundaries[1:]):
            if not left < right:
                raise InstanceError("strip boundaries must be strictly increasing", field="boundaries")

    @property
    def num_strips(self) -> int:
        return len(self.boundaries) + 1

    def strip_of(self, x: Coord) -> int:
        idx = bisect_right(self.boundaries, x)
        if idx > 0 and self.boundaries[idx - 1] == x:
            raise InstanceError(f"x={x} lies on a strip boundary", field="boundaries")
        return idx

    def left_boundary(self, strip: int) -> Optional[Coord]:
        return self.boundaries[strip - 1] if strip > 0 else None

    def right_boundary(self, strip: int) -> Optional[Coord]:
        return self.boundaries[strip] if strip < len(self.boundaries) else None

    def check_points(self, instance: Instance) -> None:
        """Raise if any input point sits on a boundary."""
        for p in instance.points:
            self.strip_of(p.x)


class StripRelation(str, Enum):
    SAME = "same"
    ADJACENT = "adjacent"
    DISTANT = "distant"


def balanced_strips(instance: Instance, s: int) -> StripSubdivision:
    """At most ``s`` strips holding at most ceil(g/s) x-groups each.

    Boundaries sit at midpoints between consecutive distinct x-coordinates.

    Raises:
        InstanceError: If ``s < 2``.
    """
    if s < 2:
        raise InstanceError(f"strip count must be at least 2, got {s}", field="s")
    groups = x_groups(instance)
    if len(groups) <= 1:
        return StripSubdivision(())
    cap = math.ceil(len(groups) / s)
    boundaries = [
        midpoint(groups[i - 1].x, groups[i].x) for i in range(cap, len(groups), cap)
    ]
    return StripSubdivision(tuple(boundaries))


def relation(instance: Instance, sub: StripSubdivision, demand: Demand) -> StripRelation:
    a, b = instance.endpoints(demand)
    gap = abs(sub.strip_of(a.x) - sub.strip_of(b.x))
    if gap == 0:
        return StripRelation.SAME
    return StripRelation.ADJACENT if gap == 1 else StripRelation.DISTANT


@dataclass(frozen=True)
class ProjectionMap:
    """Original point id -> its projections onto the left / right strip boundary."""

    left: Dict[str, Point] = field(default_factory=dict)
    right: Dict[str, Point] = field(default_factory=dict)

    def all_points(self) -> List[Point]:
        unique = {p.id: p for p in list(self.left.values()) + list(self.right.values())}
        return sorted(unique.values(), key=lambda p: (p.x, p.y))


def _boundary_point(index: int, x: Coord, y: Coord) -> Point:
    return Point(f"B{index}:{y}", x, y)


def project(instance: Instance, sub: StripSubdivision) -> ProjectionMap:
    """pi^l and pi^r for every point; points share a projection when they share a row."""
    left: Dict[str, Point] = {}
    right: Dict[str, Point] = {}
    cache: Dict[XY, Point] = {}
    for p in instance.points:
        strip = sub.strip_of(p.x)
        for side, boundary_index in (("left", strip - 1), ("right", strip)):
            if boundary_index < 0 or boundary_index >= len(sub.boundaries):
                continue
            bx = sub.boundaries[boundary_index]
            proj = cache.setdefault((bx, p.y), _boundary_point(boundary_index, bx, p.y))
            (left if side == "left" else right)[p.id] = proj
    return ProjectionMap(left=left, right=right)


def inter_strip_instance(instance: Instance, sub: StripSubdivision) -> Tuple[Instance, ProjectionMap]:
    """Projected instance over pi_S(P) with the demands of non-adjacent strip pairs.

    Raises:
        InstanceError: If a boundary coincides with a point x-coordinate.
    """
    sub.check_points(instance)
    projections = project(instance, sub)
    demands: List[Demand] = []
    for demand in instance.demands:
        if relation(instance, sub, demand) is not StripRelation.DISTANT:
            continue
        a, b = instance.endpoints(demand)
        if a.x > b.x:
            a, b = b, a
        demands.append(Demand(projections.right[a.id].id, projections.left[b.id].id))
    projected = Instance(tuple(projections.all_points()), tuple(demands))
    projected, report = normalize(projected)
    logger.debug(
        "inter-strip instance: %d strips, %d points, %d demands (%d aligned dropped)",
        sub.num_strips,
        len(projected.points),
        len(projected.demands),
        report.dropped_aligned,
    )
    return projected, projections


def intra_strip_instances(instance: Instance, sub: StripSubdivision) -> List[Instance]:
    """One induced instance per nonempty strip, left to right."""
    members: Dict[int, List[str]] = {}
    for p in instance.points:
        members.setdefault(sub.strip_of(p.x), []).append(p.id)
    return [instance.induced(members[strip]) for strip in sorted(members)]
