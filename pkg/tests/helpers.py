"""Seeded instance builders and brute-force oracles shared by the tests."""

import random
from itertools import combinations
from typing import Iterable, List, Set

from src.geometry import Demand, Instance, Point, XY


def monotone_instance(rng: random.Random, n: int, max_demands: int) -> Instance:
    """Strict permutation points with up to ``max_demands`` increasing demands."""
    ys = list(range(n))
    rng.shuffle(ys)
    points = [Point(f"p{i}", i, ys[i]) for i in range(n)]
    pairs = [(p, q) for p, q in combinations(points, 2) if p.y < q.y]
    rng.shuffle(pairs)
    demands = [Demand(p.id, q.id) for p, q in pairs[:max_demands]]
    return Instance(tuple(points), tuple(demands))


def mixed_instance(rng: random.Random, n: int, density: float) -> Instance:
    """Points on a small grid (rows and columns shared) with random demands."""
    cells = rng.sample([(x, y) for x in range(n) for y in range(n)], n)
    points = [Point(f"p{i}", x, y) for i, (x, y) in enumerate(cells)]
    demands = [Demand(p.id, q.id) for p, q in combinations(points, 2) if rng.random() < density]
    return Instance(tuple(points), tuple(demands))


def brute_connected(points: Iterable[XY], p: XY, q: XY) -> bool:
    """Depth-first search over every aligned jump that moves toward q inside R(p, q)."""
    pts = set(points)
    xlo, xhi = sorted((p[0], q[0]))
    ylo, yhi = sorted((p[1], q[1]))
    inside = [r for r in pts if xlo <= r[0] <= xhi and ylo <= r[1] <= yhi]
    seen: Set[XY] = {p}
    stack: List[XY] = [p]
    while stack:
        cur = stack.pop()
        if cur == q:
            return True
        for r in inside:
            if r in seen or (r[0] != cur[0] and r[1] != cur[1]):
                continue
            if abs(r[0] - q[0]) <= abs(cur[0] - q[0]) and abs(r[1] - q[1]) <= abs(cur[1] - q[1]):
                seen.add(r)
                stack.append(r)
    return False


def random_points(rng: random.Random, n: int, span: int) -> List[XY]:
    return rng.sample([(x, y) for x in range(span) for y in range(span)], n)
