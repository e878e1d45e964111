"""Geometric model shared by every algorithm."""

from .grid import Grid
from .intervals import Interval, IntervalSet, interval_hitting_set, interval_mis
from .model import (
    Coord,
    Demand,
    DemandKind,
    Instance,
    NormalizationReport,
    Point,
    Rect,
    Solution,
    XGroup,
    XY,
    as_coord,
    is_strict,
    manhattan,
    materialize_demands,
    midpoint,
    normalize,
    reflect_coords,
    reflect_y,
    require_strict,
    split_monotone,
    x_groups,
)
from .strips import (
    ProjectionMap,
    StripRelation,
    StripSubdivision,
    balanced_strips,
    inter_strip_instance,
    intra_strip_instances,
)

__all__ = [
    "Coord",
    "Demand",
    "DemandKind",
    "Grid",
    "Instance",
    "Interval",
    "IntervalSet",
    "NormalizationReport",
    "Point",
    "ProjectionMap",
    "Rect",
    "Solution",
    "StripRelation",
    "StripSubdivision",
    "XGroup",
    "XY",
    "as_coord",
    "balanced_strips",
    "inter_strip_instance",
    "interval_hitting_set",
    "interval_mis",
    "intra_strip_instances",
    "is_strict",
    "manhattan",
    "materialize_demands",
    "midpoint",
    "normalize",
    "reflect_coords",
    "reflect_y",
    "require_strict",
    "split_monotone",
    "x_groups",
]
