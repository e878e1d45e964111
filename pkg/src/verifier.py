"""Feasibility checks: M-connectivity, solution verification, arboreal satisfaction and VS certificates."""

from __future__ import annotations

import logging
from bisect import bisect_left, bisect_right
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.errors import InstanceError
from src.geometry import Coord, Demand, Instance, Rect, Solution, XY

logger = logging.getLogger(__name__)


def _sign(value: Coord) -> int:
    return (value > 0) - (value < 0)


class ManhattanIndex:
    """Row and column lookups over a fixed point set.

    Answers ``m_connected`` queries by breadth-first search along
    immediate-successor arcs: from a node, step to the nearest point in the
    same column toward q and to the nearest point in the same row toward q,
    never leaving R(p, q).
    """

    def __init__(self, coords: Iterable[XY]):
        self.coords = frozenset(coords)
        columns: Dict[Coord, List[Coord]] = {}
        rows: Dict[Coord, List[Coord]] = {}
        for x, y in self.coords:
            columns.setdefault(x, []).append(y)
            rows.setdefault(y, []).append(x)
        self.columns = {x: sorted(ys) for x, ys in columns.items()}
        self.rows = {y: sorted(xs) for y, xs in rows.items()}

    def __contains__(self, xy: XY) -> bool:
        return xy in self.coords

    @staticmethod
    def _step(line: List[Coord], value: Coord, direction: int, limit: Coord) -> Optional[Coord]:
        if direction > 0:
            idx = bisect_right(line, value)
            if idx < len(line) and line[idx] <= limit:
                return line[idx]
        elif direction < 0:
            idx = bisect_left(line, value) - 1
            if idx >= 0 and line[idx] >= limit:
                return line[idx]
        return None

    def _search(self, p: XY, q: XY) -> Optional[Dict[XY, Optional[XY]]]:
        for xy in (p, q):
            if xy not in self.coords:
                raise InstanceError(f"point {xy} is not in the point set")
        dx, dy = _sign(q[0] - p[0]), _sign(q[1] - p[1])
        parent: Dict[XY, Optional[XY]] = {p: None}
        queue = deque([p])
        while queue:
            node = queue.popleft()
            if node == q:
                return parent
            x, y = node
            nxt_y = self._step(self.columns[x], y, dy, q[1])
            nxt_x = self._step(self.rows[y], x, dx, q[0])
            for succ in ((x, nxt_y) if nxt_y is not None else None, (nxt_x, y) if nxt_x is not None else None):
                if succ is not None and succ not in parent:
                    parent[succ] = node
                    queue.append(succ)
        return None

    def m_connected(self, p: XY, q: XY) -> bool:
        if p[0] == q[0] or p[1] == q[1]:
            if p not in self.coords or q not in self.coords:
                raise InstanceError(f"points {p}, {q} are not both in the point set")
            return True
        return self._search(p, q) is not None

    def witness_path(self, p: XY, q: XY) -> Optional[List[XY]]:
        """One monotone path from p to q through the point set, or None."""
        parent = self._search(p, q)
        if parent is None:
            return None
        path = [q]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        return path[::-1]


def m_connected(points: Iterable[XY], p: XY, q: XY) -> bool:
    """True iff p and q are joined by an xy-monotone rectilinear path through ``points``.

    Raises:
        InstanceError: If p or q is not in ``points``.
    """
    return ManhattanIndex(points).m_connected(p, q)


def witness_path(points: Iterable[XY], p: XY, q: XY) -> Optional[List[XY]]:
    return ManhattanIndex(points).witness_path(p, q)


@dataclass(frozen=True)
class VerificationReport:
    feasible: bool
    violated: Tuple[Demand, ...] = ()
    checked: int = 0


def verify_solution(instance: Instance, solution: Solution, log_paths: bool = False) -> VerificationReport:
    """Check every demand over P ∪ Q.

    Args:
        instance: Instance whose demands are checked.
        solution: Auxiliary points.
        log_paths: Log one witness path per satisfied demand at DEBUG level.

    Returns:
        Report listing every violated demand in input order.
    """
    index = ManhattanIndex(set(instance.coords) | set(solution.coords))
    violated: List[Demand] = []
    for demand in instance.demands:
        p, q = instance.demand_xy(demand)
        if not index.m_connected(p, q):
            violated.append(demand)
        elif log_paths:
            logger.debug("%s -> %s via %s", demand.a, demand.b, index.witness_path(p, q))
    if violated:
        logger.debug("%d of %d demands violated", len(violated), len(instance.demands))
    return VerificationReport(not violated, tuple(violated), len(instance.demands))


def arboreally_satisfied(points: Iterable[XY], strict: bool = True) -> bool:
    """True iff every unaligned pair's closed rectangle contains a third point.

    Args:
        points: Coordinates.
        strict: Require distinct x and distinct y. With ``strict=False``
            shared rows and columns are allowed and aligned pairs are skipped.

    Raises:
        InstanceError: If ``strict`` and two points share a coordinate.
    """
    pts = sorted(set(points))
    if strict:
        for axis, name in ((0, "x"), (1, "y")):
            values = [p[axis] for p in pts]
            if len(set(values)) != len(values):
                raise InstanceError(f"points share an {name}-coordinate", field="points")

    columns: Dict[Coord, List[Coord]] = {}
    for x, y in pts:
        columns.setdefault(x, []).append(y)
    xs = sorted(columns)

    for ci, px in enumerate(xs):
        for py in columns[px]:
            # nearest y >= py / <= py among points already swept, p excluded
            same = [y for y in columns[px] if y != py]
            up = min((y for y in same if y >= py), default=None)
            down = max((y for y in same if y <= py), default=None)
            for qx in xs[ci + 1 :]:
                col = columns[qx]
                for qy in col:
                    if qy == py:
                        continue
                    if qy > py:
                        inside = up is not None and up <= qy
                        if not inside:
                            k = bisect_left(col, py)
                            inside = k < len(col) and col[k] < qy
                    else:
                        inside = down is not None and down >= qy
                        if not inside:
                            k = bisect_right(col, py) - 1
                            inside = k >= 0 and col[k] > qy
                    if not inside:
                        return False
                for y in col:
                    if y >= py and (up is None or y < up):
                        up = y
                    if y <= py and (down is None or y > down):
                        down = y
    return True


@dataclass(frozen=True)
class Cut:
    """Vertical segment {x} × [ylo, yhi]."""

    x: Coord
    ylo: Coord
    yhi: Coord

    def meets_interior(self, rect: Rect) -> bool:
        return rect.xlo < self.x < rect.xhi and self.ylo < rect.yhi and self.yhi > rect.ylo


@dataclass(frozen=True)
class VsCertificate:
    """Demands R_1..R_k in cut order with one cut per demand."""

    order: Tuple[Demand, ...] = ()
    cuts: Tuple[Cut, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.order)


def verify_vs_certificate(instance: Instance, certificate: VsCertificate) -> bool:
    """True iff cut i spans R_i inside its x-range and misses the interior of every later R_j.

    Raises:
        InstanceError: On a segment with ylo >= yhi or a demand the instance lacks.
    """
    known = {frozenset(d.ids()): d for d in instance.demands}
    rects: List[Rect] = []
    for demand in certificate.order:
        key = frozenset(demand.ids())
        if key not in known:
            raise InstanceError(f"certificate demand {demand.a}-{demand.b} is not in the instance", field="order")
        rects.append(instance.rect(known[key]))
    for cut in certificate.cuts:
        if not cut.ylo < cut.yhi:
            raise InstanceError(f"malformed cut at x={cut.x}: ylo={cut.ylo} yhi={cut.yhi}", field="cuts")

    if len(certificate.order) != len(certificate.cuts):
        return False
    if len({frozenset(d.ids()) for d in certificate.order}) != len(certificate.order):
        return False
    for i, (rect, cut) in enumerate(zip(rects, certificate.cuts)):
        if not (rect.xlo < cut.x < rect.xhi and cut.ylo <= rect.ylo and cut.yhi >= rect.yhi):
            return False
        if any(cut.meets_interior(later) for later in rects[i + 1 :]):
            return False
    return True
