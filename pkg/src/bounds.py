"""Lower bounds on the optimum: boundary IS, exact IR, exact VS and their combination."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from src.config import settings
from src.errors import BudgetExceeded
from src.geometry import (
    Coord,
    Demand,
    Instance,
    Interval,
    Rect,
    interval_mis,
    midpoint,
    normalize,
    split_monotone,
)
from src.verifier import Cut, VsCertificate

logger = logging.getLogger(__name__)


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class BoundarySegment:
    """Left or right side of a demand rectangle."""

    x: Coord
    ylo: Coord
    yhi: Coord
    side: Side
    demand: Demand


def _cuttable(instance: Instance) -> List[Demand]:
    return [d for d in instance.demands if not instance.rect(d).degenerate]


def _side_sum(instance: Instance, side: Side) -> List[BoundarySegment]:
    columns: Dict[Coord, List[Interval]] = {}
    for demand in _cuttable(instance):
        rect = instance.rect(demand)
        x = rect.xlo if side is Side.LEFT else rect.xhi
        columns.setdefault(x, []).append(Interval(rect.ylo, rect.yhi, tag=demand))
    chosen: List[BoundarySegment] = []
    for x in sorted(columns):
        for iv in interval_mis(columns[x]):
            chosen.append(BoundarySegment(x, iv.lo, iv.hi, side, iv.tag))
    return chosen


def boundary_is(instance: Instance) -> Tuple[int, List[BoundarySegment]]:
    """Maximum boundary independent set, all left sides or all right sides.

    Segments in different columns never overlap, so each column is solved
    as an interval independent set on its own. Ties go to the left side.
    """
    left = _side_sum(instance, Side.LEFT)
    right = _side_sum(instance, Side.RIGHT)
    best = left if len(left) >= len(right) else right
    return len(best), best


def _conflict(r: Rect, s: Rect) -> bool:
    return any(r.interior_contains(c) for c in s.corners()) or any(
        s.interior_contains(c) for c in r.corners()
    )


def ir_exact(instance: Instance, cap: Optional[int] = None) -> int:
    """Largest set of pairwise non-conflicting demand rectangles.

    Solved as a maximum clique of the compatibility graph.

    Raises:
        BudgetExceeded: If the instance has more than ``cap`` demands.
    """
    cap = settings.IR_CAP if cap is None else cap
    demands = _cuttable(instance)
    if len(demands) > cap:
        raise BudgetExceeded(f"ir_exact: {len(demands)} demands exceed the cap of {cap}", limit=cap)
    if not demands:
        return 0
    rects = [instance.rect(d) for d in demands]
    compatible = nx.Graph()
    compatible.add_nodes_from(range(len(rects)))
    for i in range(len(rects)):
        for j in range(i + 1, len(rects)):
            if not _conflict(rects[i], rects[j]):
                compatible.add_edge(i, j)
    _, size = nx.max_weight_clique(compatible, weight=None)
    return size


def _candidate_cuts(rect: Rect, corner_xs: Sequence[Coord], grid_step: Optional[Coord]) -> List[Coord]:
    if grid_step is not None:
        xs, x = [], rect.xlo + grid_step
        while x < rect.xhi:
            xs.append(x)
            x += grid_step
        return xs
    inside = sorted({rect.xlo, rect.xhi, *(x for x in corner_xs if rect.xlo < x < rect.xhi)})
    return [midpoint(a, b) for a, b in zip(inside, inside[1:])]


class _CutTable:
    """Per demand: candidate cuts keyed by the bitmask of rectangles each one blocks."""

    def __init__(self, instance: Instance, demands: Sequence[Demand], grid_step: Optional[Coord] = None):
        self.demands = list(demands)
        self.rects = [instance.rect(d) for d in self.demands]
        corner_xs = sorted({x for r in self.rects for x in (r.xlo, r.xhi)})
        self.options: List[List[Tuple[int, Cut]]] = []
        for i, rect in enumerate(self.rects):
            seen: Dict[int, Cut] = {}
            for x in _candidate_cuts(rect, corner_xs, grid_step):
                cut = Cut(x, rect.ylo, rect.yhi)
                blocked = 0
                for j, other in enumerate(self.rects):
                    if j != i and cut.meets_interior(other):
                        blocked |= 1 << j
                seen.setdefault(blocked, cut)
            # drop cuts whose blocked set contains another's
            minimal = [
                (b, c) for b, c in seen.items() if not any(o != b and o & b == o for o in seen)
            ]
            self.options.append(sorted(minimal, key=lambda bc: bc[0]))

    def cut_for(self, i: int, others: int) -> Optional[Cut]:
        for blocked, cut in self.options[i]:
            if blocked & others == 0:
                return cut
        return None


def vs_exact(
    instance: Instance,
    cap: Optional[int] = None,
    grid_step: Optional[Coord] = None,
) -> Tuple[int, VsCertificate]:
    """Largest vertically separable demand subset, with its certificate.

    A subset is separable iff some member admits a cut avoiding the interiors
    of all other members and the rest is separable. Subsets are bitmasks
    processed in increasing order.

    Args:
        instance: Normalized instance.
        cap: Demand cap (``settings.VS_CAP`` when omitted).
        grid_step: Use every multiple of this step inside each rectangle as
            a cut candidate instead of the corner midpoints.

    Raises:
        BudgetExceeded: If the instance has more than ``cap`` demands.
    """
    cap = settings.VS_CAP if cap is None else cap
    demands = _cuttable(instance)
    if len(demands) > cap:
        raise BudgetExceeded(f"vs_exact: {len(demands)} demands exceed the cap of {cap}", limit=cap)
    if not demands:
        return 0, VsCertificate()

    table = _CutTable(instance, demands, grid_step)
    k = len(demands)
    choice: List[Optional[Tuple[int, Cut]]] = [None] * (1 << k)
    separable = bytearray(1 << k)
    separable[0] = 1
    best_mask = 0
    for mask in range(1, 1 << k):
        bits = mask
        while bits:
            low = bits & -bits
            i = low.bit_length() - 1
            bits ^= low
            rest = mask ^ low
            if not separable[rest]:
                continue
            cut = table.cut_for(i, rest)
            if cut is not None:
                separable[mask] = 1
                choice[mask] = (i, cut)
                break
        if separable[mask] and bin(mask).count("1") > bin(best_mask).count("1"):
            best_mask = mask

    order: List[Demand] = []
    cuts: List[Cut] = []
    mask = best_mask
    while mask:
        i, cut = choice[mask]
        order.append(demands[i])
        cuts.append(cut)
        mask ^= 1 << i
    logger.debug("vs_exact: %d of %d demands separable", len(order), k)
    return len(order), VsCertificate(tuple(order), tuple(cuts))


def greedy_vs_certificate(
    instance: Instance, demands: Optional[Sequence[Demand]] = None
) -> Optional[VsCertificate]:
    """Peel a demand set one cuttable rectangle at a time.

    Every subset of a separable set is separable, so peeling never gets
    stuck on a separable input. Returns None when the set is not separable.
    """
    chosen = list(demands) if demands is not None else _cuttable(instance)
    table = _CutTable(instance, chosen)
    remaining = (1 << len(chosen)) - 1
    order: List[Demand] = []
    cuts: List[Cut] = []
    while remaining:
        for i in range(len(chosen)):
            bit = 1 << i
            if remaining & bit:
                cut = table.cut_for(i, remaining ^ bit)
                if cut is not None:
                    order.append(chosen[i])
                    cuts.append(cut)
                    remaining ^= bit
                    break
        else:
            return None
    return VsCertificate(tuple(order), tuple(cuts))


def component_bound(instance: Instance) -> int:
    """c(G_P) - c(G_P + D): each added point merges at most two Manhattan components.

    For instances without shared rows or columns this is the sum over
    demand-graph components of (points - 1).
    """
    graph = nx.Graph()
    graph.add_nodes_from(p.id for p in instance.points)
    for axis in ("x", "y"):
        lines: Dict[Coord, List[str]] = {}
        for p in instance.points:
            lines.setdefault(getattr(p, axis), []).append(p.id)
        for ids in lines.values():
            nx.add_path(graph, ids)
    before = nx.number_connected_components(graph)
    graph.add_edges_from(d.ids() for d in instance.demands)
    return before - nx.number_connected_components(graph)


@dataclass(frozen=True)
class LowerBoundBreakdown:
    is_value: int
    components: int
    vs_value: Optional[int] = None

    @property
    def value(self) -> int:
        return max(self.is_value, self.components, self.vs_value or 0)

    @property
    def source(self) -> str:
        if self.vs_value is not None and self.vs_value == self.value and self.vs_value > max(self.is_value, self.components):
            return "vs"
        return "is" if self.is_value >= self.components else "components"


def lower_bound_breakdown(instance: Instance, vs_cap: Optional[int] = None) -> LowerBoundBreakdown:
    """Certified lower bound parts: IS and VS per monotone half, and the component count.

    VS is only computed when each half fits under ``vs_cap``.
    """
    instance, _ = normalize(instance)
    vs_cap = settings.VS_CAP if vs_cap is None else vs_cap
    halves = split_monotone(instance)
    is_value = max(boundary_is(half)[0] for half in halves)
    vs_value: Optional[int] = None
    if all(len(half.demands) <= vs_cap for half in halves):
        vs_value = max(vs_exact(half, cap=vs_cap)[0] for half in halves)
    breakdown = LowerBoundBreakdown(is_value, component_bound(instance), vs_value)
    logger.debug("lower bound %d from %s", breakdown.value, breakdown.source)
    return breakdown


def opt_lower_bound(instance: Instance, vs_cap: Optional[int] = None) -> int:
    return lower_bound_breakdown(instance, vs_cap).value
