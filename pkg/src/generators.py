"""Seeded instance generators for tests, the CLI and the bench harness."""

from __future__ import annotations

import logging
import math
import random
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Union

from src.errors import InstanceError
from src.geometry import Demand, DemandKind, Instance, Point

logger = logging.getLogger(__name__)

Radius = Union[int, Fraction]


def _check_size(n: int) -> None:
    if n < 1:
        raise InstanceError(f"n must be at least 1, got {n}", field="n")


def _check_density(density: float) -> None:
    if not 0 <= density <= 1:
        raise InstanceError(f"density must lie in [0, 1], got {density}", field="density")


def _strict_positions(n: int, rng: random.Random, span: Optional[int] = None) -> List[tuple]:
    span = max(span or n, n)
    xs = rng.sample(range(span), n)
    ys = rng.sample(range(span), n)
    return list(zip(sorted(xs), ys))


def gen_random(n: int, density: float, seed: int) -> Instance:
    """Permutation-matrix points; every pair demanded with probability ``density``.

    Density 1 yields a uniform instance.
    """
    _check_size(n)
    _check_density(density)
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    points = [Point(f"p{i}", i, perm[i]) for i in range(n)]
    if density >= 1:
        return Instance.build(points, kind=DemandKind.UNIFORM)
    demands = [Demand(p.id, q.id) for p, q in combinations(points, 2) if rng.random() < density]
    return Instance(tuple(points), tuple(demands))


def gen_thin(n: int, s: int, density: float, seed: int) -> Instance:
    """Monotone instance whose points use at most ``s`` columns and distinct rows."""
    _check_size(n)
    _check_density(density)
    if s < 1:
        raise InstanceError(f"s must be at least 1, got {s}", field="s")
    rng = random.Random(seed)
    ys = list(range(n))
    rng.shuffle(ys)
    points = [Point(f"p{i}", rng.randrange(s), ys[i]) for i in range(n)]
    demands = []
    for p, q in combinations(points, 2):
        if p.x == q.x or (p.x < q.x) != (p.y < q.y):
            continue
        if rng.random() < density:
            a, b = (p, q) if p.x < q.x else (q, p)
            demands.append(Demand(a.id, b.id))
    return Instance(tuple(points), tuple(demands))


def gen_diagonal(n: int) -> Instance:
    """n diagonally shifted copies of one demand: R((i, i), (i + n, i + n)) for i = 1..n.

    All 2n coordinates are distinct already.
    """
    _check_size(n)
    lows = [Point(f"a{i}", i, i) for i in range(1, n + 1)]
    highs = [Point(f"b{i}", i + n, i + n) for i in range(1, n + 1)]
    demands = [Demand(f"a{i}", f"b{i}") for i in range(1, n + 1)]
    return Instance(tuple(lows + highs), tuple(demands))


def gen_triangular(n: int) -> Instance:
    """Apex p0 = (0, 0) with demands to the descending diagonal p_i = (i, n + 1 - i)."""
    _check_size(n)
    points = [Point("p0", 0, 0)] + [Point(f"p{i}", i, n + 1 - i) for i in range(1, n + 1)]
    demands = [Demand("p0", f"p{i}") for i in range(1, n + 1)]
    return Instance(tuple(points), tuple(demands))


def gen_unit_disk(n: int, r: Radius, seed: int, span: Optional[int] = None) -> Instance:
    _check_size(n)
    rng = random.Random(seed)
    points = [Point(f"p{i}", x, y) for i, (x, y) in enumerate(_strict_positions(n, rng, span or 3 * n))]
    return Instance.build(points, kind=DemandKind.UNIT_DISK, radius=Fraction(r))


def gen_disk(
    n: int,
    seed: int,
    radii: Sequence[Radius] = (1,),
    max_radius: Optional[int] = None,
    span: Optional[int] = None,
) -> Instance:
    """Disk instance with radii drawn from ``radii``, or log-uniform in [1, max_radius].

    Args:
        n: Number of points.
        seed: RNG seed.
        radii: Candidate radii, one chosen uniformly per point. A single
            value gives constant radii, two values a two-disk instance.
        max_radius: When set, radii are 2^U(0, log2 max_radius) rounded to
            integers instead.
        span: Coordinate range (default 3n).
    """
    _check_size(n)
    if any(Fraction(r) <= 0 for r in radii) or not radii:
        raise InstanceError("radii must be positive", field="radii")
    rng = random.Random(seed)
    positions = _strict_positions(n, rng, span or 3 * n)
    points = []
    for i, (x, y) in enumerate(positions):
        if max_radius is not None:
            radius = Fraction(max(1, min(max_radius, round(2 ** rng.uniform(0, math.log2(max(max_radius, 1)))))))
        else:
            radius = Fraction(rng.choice(list(radii)))
        points.append(Point(f"p{i}", x, y, radius=radius))
    return Instance.build(points, kind=DemandKind.DISK)


def gen_kpartite(n: int, k: int, seed: int, columns: Optional[int] = None) -> Instance:
    """Complete k-partite instance with distinct rows; ``columns`` limits the distinct x values."""
    _check_size(n)
    if k < 2:
        raise InstanceError(f"k must be at least 2, got {k}", field="k")
    rng = random.Random(seed)
    ys = list(range(n))
    rng.shuffle(ys)
    if columns is None:
        xs = rng.sample(range(2 * n), n)
    else:
        xs = [rng.randrange(columns) for _ in range(n)]
    points = [Point(f"p{i}", xs[i], ys[i], label=f"S{rng.randrange(k)}") for i in range(n)]
    return Instance.build(points, kind=DemandKind.KPARTITE)
