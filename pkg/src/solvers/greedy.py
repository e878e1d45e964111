"""Row-sweep greedy for uniform demands."""

from __future__ import annotations

import logging
from typing import Iterable, List, Set

from src.errors import InstanceError
from src.geometry import Coord, DemandKind, Instance, Solution, XY, require_strict

logger = logging.getLogger(__name__)


def _staircase(lower: List[XY], x0: Coord) -> List[XY]:
    """Points q below the sweep row whose rectangle with (x0, row) holds no other lower point."""
    hits: List[XY] = []
    # right side: descending y, then ascending x
    nearest = None
    for x, y in sorted((p for p in lower if p[0] >= x0), key=lambda p: (-p[1], p[0])):
        if x == x0:
            nearest = x0 if nearest is None else min(nearest, x0)
            continue
        if nearest is None or x < nearest:
            hits.append((x, y))
            nearest = x
    # left side: descending y, then descending x
    nearest = None
    for x, y in sorted((p for p in lower if p[0] <= x0), key=lambda p: (-p[1], -p[0])):
        if x == x0:
            nearest = x0 if nearest is None else max(nearest, x0)
            continue
        if nearest is None or x > nearest:
            hits.append((x, y))
            nearest = x
    return hits


def greedy_points(points: Iterable[XY]) -> List[XY]:
    """Aux points added by sweeping rows bottom to top.

    At the row of p, every lower point q (input or added) whose rectangle
    with p is empty gets the point (x(q), y(p)). The result together with
    ``points`` is arboreally satisfied. Rows must be distinct.
    """
    processed: List[XY] = []
    added: Set[XY] = set()
    for x0, y0 in sorted(points, key=lambda p: (p[1], p[0])):
        row = [(qx, y0) for qx, _ in _staircase(processed, x0)]
        processed.append((x0, y0))
        for xy in row:
            if xy not in added:
                added.add(xy)
                processed.append(xy)
    return sorted(added)


def _complete(instance: Instance) -> bool:
    n = len(instance.points)
    pairs = {frozenset(d.ids()) for d in instance.demands}
    return len(pairs) == n * (n - 1) // 2


def greedy_uniform(instance: Instance) -> Solution:
    """Greedy sweep for instances that demand every pair.

    Raises:
        InstanceError: If the demand set is not complete or two points share
            a row or column.
    """
    if instance.kind is not DemandKind.UNIFORM and not _complete(instance):
        raise InstanceError(f"greedy needs uniform demands, got {instance.kind.value}", field="kind")
    require_strict(instance)
    aux = greedy_points(p.xy for p in instance.points)
    logger.debug("greedy added %d points for %d inputs", len(aux), len(instance.points))
    return Solution.from_coords(aux, instance)
