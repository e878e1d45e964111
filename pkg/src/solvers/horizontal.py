"""Horizontal divide and conquer over a hitting set of demand rows."""

from __future__ import annotations

import logging
from typing import Iterable, List, Sequence, Set, Tuple

from src.errors import InstanceError
from src.geometry import (
    Coord,
    Instance,
    Interval,
    Solution,
    XY,
    interval_hitting_set,
    normalize,
    reflect_coords,
    reflect_y,
    split_monotone,
)

logger = logging.getLogger(__name__)

_Pair = Tuple[XY, XY]


def _dc(pairs: List[_Pair], rows: Sequence[Coord], out: Set[XY]) -> None:
    if not pairs:
        return
    if not rows:
        low, high = pairs[0]
        raise InstanceError(f"rows miss the demand interval [{low[1]}, {high[1]}]", field="rows")
    mid = (len(rows) - 1) // 2
    m = rows[mid]
    above: List[_Pair] = []
    below: List[_Pair] = []
    for low, high in pairs:
        if low[1] <= m <= high[1]:
            out.add((low[0], m))
            out.add((high[0], m))
        elif low[1] > m:
            above.append((low, high))
        else:
            below.append((low, high))
    _dc(above, rows[mid + 1 :], out)
    _dc(below, rows[:mid], out)


def _pairs(instance: Instance) -> List[_Pair]:
    pairs = []
    for demand in instance.demands:
        p, q = instance.demand_xy(demand)
        pairs.append((p, q) if p[1] <= q[1] else (q, p))
    return pairs


def horizontal_dc(instance: Instance, rows: Iterable[Coord]) -> Solution:
    """Split on the lower-median row; demands straddling it get both endpoints projected onto it.

    Demands strictly above and strictly below the median recurse with the
    rows on their side.

    Raises:
        InstanceError: If ``rows`` misses some demand's y-interval.
    """
    out: Set[XY] = set()
    _dc(_pairs(instance), sorted(set(rows)), out)
    return Solution.from_coords(out, instance)


def demand_rows(instance: Instance) -> List[Coord]:
    """Minimum hitting set of the demand y-intervals."""
    intervals = [Interval(r.ylo, r.yhi) for r in map(instance.rect, instance.demands) if r.ylo < r.yhi]
    return interval_hitting_set(intervals)


def horizontal_half(instance: Instance) -> Solution:
    """Solve one monotone half: hitting set rows, then the divide and conquer."""
    rows = demand_rows(instance)
    logger.debug("hitting set of %d rows for %d demands", len(rows), len(instance.demands))
    return horizontal_dc(instance, rows)


def horizontal_manhattan(instance: Instance) -> Solution:
    """Solve the increasing demands directly and the decreasing ones mirrored in y."""
    instance, _ = normalize(instance)
    up, down = split_monotone(instance)
    up_solution = horizontal_half(up)
    mirrored = horizontal_half(reflect_y(down))
    down_coords = reflect_coords(mirrored.coords)
    return Solution.from_coords(list(up_solution.coords) + down_coords, instance)
