"""Geometric data model: points, demands, instances and solutions.

Coordinates are exact. Input coordinates are Python ints; anything derived
from midpoints, grid offsets or perturbations is a ``fractions.Fraction``.
``as_coord`` collapses integral fractions back to ``int`` so that equal values
always hash and print the same way.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.errors import InstanceError

logger = logging.getLogger(__name__)

Coord = Union[int, Fraction]
XY = Tuple[Coord, Coord]


def as_coord(value: Union[int, Fraction, str]) -> Coord:
    """Return an exact coordinate, using ``int`` whenever the value is integral.

    Args:
        value: Integer, fraction, or a ``"p/q"`` / decimal string.

    Returns:
        ``int`` for integral values, ``Fraction`` otherwise.

    Raises:
        InstanceError: If the value is a float or an unparsable string.
    """
    if isinstance(value, bool):
        raise InstanceError(f"boolean is not a coordinate: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        raise InstanceError(f"floating-point coordinates are not supported: {value!r}")
    try:
        frac = value if isinstance(value, Fraction) else Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InstanceError(f"not a rational number: {value!r}") from exc
    return int(frac) if frac.denominator == 1 else frac


def midpoint(a: Coord, b: Coord) -> Coord:
    """Exact midpoint of two coordinates."""
    return as_coord(Fraction(a + b, 2))


def manhattan(p: XY, q: XY) -> Coord:
    return abs(p[0] - q[0]) + abs(p[1] - q[1])


class DemandKind(str, Enum):
    """How the demand set of an instance is defined."""

    EXPLICIT = "explicit"
    UNIFORM = "uniform"
    UNIT_DISK = "unit-disk"
    DISK = "disk"
    KPARTITE = "kpartite"


@dataclass(frozen=True)
class Point:
    """Input point. ``radius`` is r_p for disk demands, ``label`` the class S_i."""

    id: str
    x: Coord
    y: Coord
    radius: Optional[Fraction] = None
    label: Optional[str] = None

    @property
    def xy(self) -> XY:
        return (self.x, self.y)


@dataclass(frozen=True)
class Demand:
    a: str
    b: str

    def ids(self) -> Tuple[str, str]:
        return (self.a, self.b)


@dataclass(frozen=True)
class Rect:
    """Closed axis-aligned rectangle."""

    xlo: Coord
    xhi: Coord
    ylo: Coord
    yhi: Coord

    @classmethod
    def of(cls, p: XY, q: XY) -> "Rect":
        return cls(min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1]))

    def contains(self, xy: XY) -> bool:
        return self.xlo <= xy[0] <= self.xhi and self.ylo <= xy[1] <= self.yhi

    def interior_contains(self, xy: XY) -> bool:
        return self.xlo < xy[0] < self.xhi and self.ylo < xy[1] < self.yhi

    def interiors_intersect(self, other: "Rect") -> bool:
        return (
            self.xlo < other.xhi
            and other.xlo < self.xhi
            and self.ylo < other.yhi
            and other.ylo < self.yhi
        )

    def corners(self) -> Tuple[XY, XY, XY, XY]:
        return (
            (self.xlo, self.ylo),
            (self.xlo, self.yhi),
            (self.xhi, self.ylo),
            (self.xhi, self.yhi),
        )

    @property
    def degenerate(self) -> bool:
        return self.xlo == self.xhi or self.ylo == self.yhi


@dataclass(frozen=True)
class NormalizationReport:
    dropped_aligned: int = 0
    duplicates: int = 0


@dataclass(frozen=True)
class Instance:
    """A point set with its (materialized) demand set.

    ``kind`` and ``radius`` record how the demands were defined; algorithms
    always read the explicit ``demands`` tuple.
    """

    points: Tuple[Point, ...]
    demands: Tuple[Demand, ...] = ()
    kind: DemandKind = DemandKind.EXPLICIT
    radius: Optional[Fraction] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "demands", tuple(self.demands))
        object.__setattr__(self, "kind", DemandKind(self.kind))
        seen_ids: Dict[str, Point] = {}
        seen_xy: Dict[XY, str] = {}
        for point in self.points:
            if point.id in seen_ids:
                raise InstanceError(f"duplicate point id {point.id!r}", field="points")
            if point.xy in seen_xy:
                raise InstanceError(
                    f"points {seen_xy[point.xy]!r} and {point.id!r} share coordinates {point.xy}",
                    field="points",
                )
            seen_ids[point.id] = point
            seen_xy[point.xy] = point.id
        for demand in self.demands:
            for pid in demand.ids():
                if pid not in seen_ids:
                    raise InstanceError(f"demand refers to unknown point {pid!r}", field="demands")
            if demand.a == demand.b:
                raise InstanceError(f"demand joins {demand.a!r} to itself", field="demands")

    @classmethod
    def build(
        cls,
        points: Iterable[Point],
        kind: DemandKind = DemandKind.EXPLICIT,
        radius: Optional[Fraction] = None,
        demands: Optional[Iterable[Demand]] = None,
    ) -> "Instance":
        """Create an instance, materializing the demands of non-explicit kinds."""
        kind = DemandKind(kind)
        points = tuple(points)
        if kind is DemandKind.EXPLICIT:
            return cls(points, tuple(demands or ()), kind, radius)
        if demands is not None:
            raise InstanceError(f"{kind.value} instances derive their demands", field="demands")
        return cls(points, materialize_demands(points, kind, radius), kind, radius)

    @cached_property
    def by_id(self) -> Dict[str, Point]:
        return {p.id: p for p in self.points}

    @cached_property
    def coords(self) -> frozenset:
        return frozenset(p.xy for p in self.points)

    def point(self, pid: str) -> Point:
        try:
            return self.by_id[pid]
        except KeyError as exc:
            raise InstanceError(f"unknown point id {pid!r}") from exc

    def endpoints(self, demand: Demand) -> Tuple[Point, Point]:
        return self.by_id[demand.a], self.by_id[demand.b]

    def rect(self, demand: Demand) -> Rect:
        a, b = self.endpoints(demand)
        return Rect.of(a.xy, b.xy)

    def with_demands(self, demands: Iterable[Demand], kind: Optional[DemandKind] = None) -> "Instance":
        return replace(self, demands=tuple(demands), kind=kind or DemandKind.EXPLICIT)

    def induced(self, ids: Iterable[str]) -> "Instance":
        """Sub-instance on ``ids`` keeping the demands with both ends inside.

        Kinds are closed under taking induced sub-instances, so ``kind`` is kept.
        """
        keep = set(ids)
        points = tuple(p for p in self.points if p.id in keep)
        demands = tuple(d for d in self.demands if d.a in keep and d.b in keep)
        return replace(self, points=points, demands=demands)

    def demand_xy(self, demand: Demand) -> Tuple[XY, XY]:
        a, b = self.endpoints(demand)
        return a.xy, b.xy


@dataclass(frozen=True)
class Solution:
    """Auxiliary points Q. Feasibility is only established by the verifier."""

    aux: Tuple[Point, ...] = ()

    def __len__(self) -> int:
        return len(self.aux)

    @property
    def coords(self) -> Tuple[XY, ...]:
        return tuple(p.xy for p in self.aux)

    @classmethod
    def from_coords(cls, coords: Iterable[XY], instance: Optional[Instance] = None) -> "Solution":
        """Build a solution from raw coordinates.

        Duplicates collapse and coordinates occupied by input points are
        dropped, since those cost nothing. Output order is sorted by (x, y).
        """
        taken = instance.coords if instance is not None else frozenset()
        unique = sorted({(as_coord(x), as_coord(y)) for x, y in coords} - taken)
        return cls(tuple(Point(f"q{i}", x, y) for i, (x, y) in enumerate(unique)))

    def union(self, *others: "Solution", instance: Optional[Instance] = None) -> "Solution":
        coords = list(self.coords)
        for other in others:
            coords.extend(other.coords)
        return Solution.from_coords(coords, instance)


def materialize_demands(
    points: Sequence[Point],
    kind: DemandKind,
    radius: Optional[Fraction] = None,
) -> Tuple[Demand, ...]:
    """Explicit demand set of a uniform, unit-disk, disk or k-partite point set.

    Raises:
        InstanceError: If the radius, per-point radii or class labels the kind
            needs are missing.
    """
    kind = DemandKind(kind)
    if kind is DemandKind.EXPLICIT:
        raise InstanceError("explicit instances carry their own demands", field="kind")
    if kind is DemandKind.UNIT_DISK and radius is None:
        raise InstanceError("unit-disk instances need a radius", field="r")
    if kind is DemandKind.DISK:
        missing = [p.id for p in points if p.radius is None]
        if missing:
            raise InstanceError(f"disk instance points without radius: {missing[:5]}", field="points")
    if kind is DemandKind.KPARTITE:
        missing = [p.id for p in points if p.label is None]
        if missing:
            raise InstanceError(f"k-partite points without class: {missing[:5]}", field="points")

    demands: List[Demand] = []
    for p, q in combinations(points, 2):
        if kind is DemandKind.UNIFORM:
            wanted = True
        elif kind is DemandKind.UNIT_DISK:
            wanted = manhattan(p.xy, q.xy) <= radius
        elif kind is DemandKind.DISK:
            wanted = manhattan(p.xy, q.xy) <= p.radius + q.radius
        else:
            wanted = p.label != q.label
        if wanted:
            demands.append(Demand(p.id, q.id))
    return tuple(demands)


def is_strict(instance: Instance, rows_only: bool = False) -> bool:
    """True if no two points share a row (and, unless ``rows_only``, a column)."""
    ys = [p.y for p in instance.points]
    if len(set(ys)) != len(ys):
        return False
    if rows_only:
        return True
    xs = [p.x for p in instance.points]
    return len(set(xs)) == len(xs)


def require_strict(instance: Instance, rows_only: bool = False) -> None:
    """Raise InstanceError naming the first shared row or column."""
    for axis in (("y",) if rows_only else ("x", "y")):
        seen: Dict[Coord, str] = {}
        for p in instance.points:
            value = getattr(p, axis)
            if value in seen:
                raise InstanceError(
                    f"points {seen[value]!r} and {p.id!r} share {axis}={value}",
                    field="points",
                )
            seen[value] = p.id


def _oriented(instance: Instance, demand: Demand) -> Demand:
    a, b = instance.endpoints(demand)
    if (a.x, a.y) <= (b.x, b.y):
        return demand
    return Demand(demand.b, demand.a)


def normalize(instance: Instance, strict: bool = False) -> Tuple[Instance, NormalizationReport]:
    """Orient, deduplicate and drop aligned demands.

    Args:
        instance: Any instance.
        strict: Also require distinct rows and columns.

    Returns:
        The normalized instance and a report of what was dropped.

    Raises:
        InstanceError: If ``strict`` and two points share a row or column.
    """
    if strict:
        require_strict(instance)
    kept: Dict[Demand, None] = {}
    aligned = duplicates = 0
    for demand in instance.demands:
        demand = _oriented(instance, demand)
        a, b = instance.endpoints(demand)
        if a.x == b.x or a.y == b.y:
            aligned += 1
            continue
        if demand in kept:
            duplicates += 1
            continue
        kept[demand] = None
    if aligned or duplicates:
        logger.debug("normalize dropped %d aligned and %d duplicate demands", aligned, duplicates)
    normalized = replace(instance, demands=tuple(kept))
    return normalized, NormalizationReport(dropped_aligned=aligned, duplicates=duplicates)


def split_monotone(instance: Instance) -> Tuple[Instance, Instance]:
    """Split a normalized instance into its increasing and decreasing demands.

    Both halves keep the full point set; aligned demands belong to neither.
    """
    up: List[Demand] = []
    down: List[Demand] = []
    for demand in instance.demands:
        a, b = instance.endpoints(demand)
        if a.y < b.y:
            up.append(demand)
        elif a.y > b.y:
            down.append(demand)
    return instance.with_demands(up), instance.with_demands(down)


@dataclass(frozen=True)
class XGroup:
    x: Coord
    ids: Tuple[str, ...]


def x_groups(instance: Instance) -> List[XGroup]:
    """Maximal same-x point subsets, left to right."""
    columns: Dict[Coord, List[Point]] = {}
    for p in instance.points:
        columns.setdefault(p.x, []).append(p)
    return [
        XGroup(x, tuple(p.id for p in sorted(columns[x], key=lambda p: (p.y, p.id))))
        for x in sorted(columns)
    ]


def reflect_y(instance: Instance) -> Instance:
    """Mirror the instance across the x-axis (y -> -y)."""
    points = tuple(replace(p, y=-p.y) for p in instance.points)
    return replace(instance, points=points)


def reflect_coords(coords: Iterable[XY]) -> List[XY]:
    return [(x, -y) for x, y in coords]
