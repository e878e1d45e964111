"""Exact search over a candidate point set: the oracle behind every approximation test."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from src.bounds import opt_lower_bound
from src.config import settings
from src.errors import BudgetExceeded
from src.geometry import Coord, Instance, Rect, Solution, XY, as_coord, midpoint, normalize
from src.verifier import ManhattanIndex

logger = logging.getLogger(__name__)


def _rects(instance: Instance) -> List[Rect]:
    return [r for r in map(instance.rect, instance.demands) if not r.degenerate]


def _grid(xs: Iterable[Coord], ys: Iterable[Coord], rects: Sequence[Rect]) -> Set[XY]:
    xs, ys = sorted(set(xs)), sorted(set(ys))
    return {(x, y) for x in xs for y in ys if any(r.contains((x, y)) for r in rects)}


def triangular_grid(instance: Instance) -> Set[XY]:
    """Grid of input x- and y-coordinates clipped to the union of demand rectangles, inputs included."""
    return _grid((p.x for p in instance.points), (p.y for p in instance.points), _rects(instance))


def hanan_candidates(instance: Instance) -> List[XY]:
    """Hanan grid points inside some demand rectangle, input points excluded."""
    instance, _ = normalize(instance)
    return sorted(triangular_grid(instance) - instance.coords)


def _with_midpoints(values: Iterable[Coord]) -> List[Coord]:
    values = sorted(set(values))
    return values + [midpoint(a, b) for a, b in zip(values, values[1:])]


def refined_candidates(instance: Instance) -> List[XY]:
    """Hanan grid refined by the midpoint row and column between consecutive coordinates."""
    instance, _ = normalize(instance)
    xs = _with_midpoints(p.x for p in instance.points)
    ys = _with_midpoints(p.y for p in instance.points)
    return sorted(_grid(xs, ys, _rects(instance)) - instance.coords)


def offgrid_candidates(instance: Instance) -> List[XY]:
    """Four off-grid candidates around the center of every Hanan cell inside a demand rectangle."""
    instance, _ = normalize(instance)
    rects = _rects(instance)
    xs = sorted({p.x for p in instance.points})
    ys = sorted({p.y for p in instance.points})
    found: Set[XY] = set()
    for x0, x1 in zip(xs, xs[1:]):
        for y0, y1 in zip(ys, ys[1:]):
            cx, cy = midpoint(x0, x1), midpoint(y0, y1)
            if not any(r.contains((cx, cy)) for r in rects):
                continue
            dx, dy = Fraction(x1 - x0) / 4, Fraction(y1 - y0) / 4
            for sx in (-1, 1):
                for sy in (-1, 1):
                    found.add((as_coord(cx + sx * dx), as_coord(cy + sy * dy)))
    return sorted(found)


@dataclass
class SearchStats:
    nodes: int = 0
    depth_limit: int = 0


class _Search:
    """Branch and bound: branch on the unsatisfied demand with the fewest candidates."""

    def __init__(self, instance: Instance, candidates: Sequence[XY], node_budget: int):
        self.instance = instance
        self.candidates = list(candidates)
        self.node_budget = node_budget
        self.stats = SearchStats()
        self.pairs = [instance.demand_xy(d) for d in instance.demands]
        self.rects = [Rect.of(p, q) for p, q in self.pairs]
        self.inside: List[List[XY]] = [
            [c for c in self.candidates if rect.contains(c)] for rect in self.rects
        ]

    def _tick(self) -> None:
        self.stats.nodes += 1
        if self.stats.nodes > self.node_budget:
            raise BudgetExceeded(
                f"exact search exceeded {self.node_budget} nodes", limit=self.node_budget
            )

    def unsatisfied(self, chosen: FrozenSet[XY]) -> List[int]:
        index = ManhattanIndex(set(self.instance.coords) | chosen)
        return [i for i, (p, q) in enumerate(self.pairs) if not index.m_connected(p, q)]

    def _disjoint_bound(self, open_ids: List[int], chosen: FrozenSet[XY]) -> int:
        used: Set[XY] = set()
        count = 0
        for i in sorted(open_ids, key=lambda i: len(self.inside[i])):
            options = set(self.inside[i]) - chosen
            if not options & used:
                used |= options
                count += 1
        return count

    def _branch(self, open_ids: List[int], chosen: FrozenSet[XY]) -> List[XY]:
        pick = min(open_ids, key=lambda i: (len(self.inside[i]), i))
        coverage: Dict[XY, int] = {}
        for c in self.inside[pick]:
            if c not in chosen:
                coverage[c] = sum(1 for i in open_ids if self.rects[i].contains(c))
        return sorted(coverage, key=lambda c: (-coverage[c], c))

    def first(self, chosen: FrozenSet[XY], budget: int, seen: Set[FrozenSet[XY]]) -> Optional[FrozenSet[XY]]:
        self._tick()
        open_ids = self.unsatisfied(chosen)
        if not open_ids:
            return chosen
        if budget == 0 or chosen in seen or self._disjoint_bound(open_ids, chosen) > budget:
            return None
        seen.add(chosen)
        for c in self._branch(open_ids, chosen):
            found = self.first(chosen | {c}, budget - 1, seen)
            if found is not None:
                return found
        return None

    def collect(self, chosen: FrozenSet[XY], budget: int, seen: Set[FrozenSet[XY]], out: Set[FrozenSet[XY]]) -> None:
        if chosen in seen:
            return
        seen.add(chosen)
        self._tick()
        open_ids = self.unsatisfied(chosen)
        if not open_ids:
            out.add(chosen)
            return
        if budget == 0 or self._disjoint_bound(open_ids, chosen) > budget:
            return
        for c in self._branch(open_ids, chosen):
            self.collect(chosen | {c}, budget - 1, seen, out)


def _prepare(
    instance: Instance,
    candidates: Optional[Iterable[XY]],
    cap: Optional[int],
    node_budget: Optional[int],
) -> Tuple[Instance, List[XY], int]:
    instance, _ = normalize(instance)
    cands = sorted(set(candidates) - instance.coords) if candidates is not None else hanan_candidates(instance)
    cap = settings.EXACT_CANDIDATE_CAP if cap is None else cap
    if len(cands) > cap and node_budget is None:
        raise BudgetExceeded(f"{len(cands)} candidates exceed the cap of {cap}", limit=cap)
    budget = settings.EXACT_NODE_BUDGET if node_budget is None else node_budget
    return instance, cands, budget


def exact_opt(
    instance: Instance,
    candidates: Optional[Iterable[XY]] = None,
    cap: Optional[int] = None,
    node_budget: Optional[int] = None,
    stats: Optional[SearchStats] = None,
) -> Tuple[int, Solution]:
    """Minimum number of candidate points that satisfy every demand.

    Iterative deepening on |Q| from ``opt_lower_bound``. Every Manhattan
    path of a demand stays inside its rectangle, so each unsatisfied demand
    forces a new point inside it; branching over those points is complete.

    Args:
        instance: Any instance; normalized first.
        candidates: Candidate points (Hanan grid by default).
        cap: Largest candidate count accepted without an explicit node budget.
        node_budget: Search-node limit across all deepening rounds.
        stats: Receives node counts when given.

    Raises:
        BudgetExceeded: If the candidates exceed ``cap`` or the search runs
            out of nodes, or no candidate subset is feasible.
    """
    instance, cands, budget = _prepare(instance, candidates, cap, node_budget)
    search = _Search(instance, cands, budget)
    if stats is not None:
        search.stats = stats
    if not search.unsatisfied(frozenset()):
        return 0, Solution()
    start = opt_lower_bound(instance)
    for k in range(max(start, 1), len(cands) + 1):
        search.stats.depth_limit = k
        found = search.first(frozenset(), k, set())
        if found is not None:
            logger.debug("exact optimum %d after %d nodes", k, search.stats.nodes)
            return k, Solution.from_coords(found, instance)
    raise BudgetExceeded(f"no feasible subset among {len(cands)} candidates", limit=len(cands))


def enumerate_optima(
    instance: Instance,
    candidates: Optional[Iterable[XY]] = None,
    cap: Optional[int] = None,
    node_budget: Optional[int] = None,
) -> List[Solution]:
    """Every minimum-cardinality feasible subset of the candidates, sorted.

    Raises:
        BudgetExceeded: As for ``exact_opt``.
    """
    instance, cands, budget = _prepare(instance, candidates, cap, node_budget)
    opt, _ = exact_opt(instance, cands, cap=len(cands), node_budget=budget)
    if opt == 0:
        return [Solution()]
    search = _Search(instance, cands, budget)
    found: Set[FrozenSet[XY]] = set()
    search.collect(frozenset(), opt, set(), found)
    return [Solution.from_coords(s, instance) for s in sorted(found, key=sorted)]
