"""Axis-parallel square grids whose lines avoid every input point."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Tuple

from src.errors import InstanceError

from .model import Coord, XY, as_coord

Cell = Tuple[int, int]


def _free_offset(values: Iterable[Coord], base: Coord, cell: Coord) -> Coord:
    """An origin congruent to no value modulo ``cell``, starting from base - 1/4."""
    residues = {Fraction(v - base) % cell for v in values}
    first = Fraction(-1, 4) % cell
    if first not in residues:
        return as_coord(base - Fraction(1, 4))
    k = 2
    while True:
        offset = Fraction(cell) * Fraction(1, k)
        if (-offset) % cell not in residues:
            return as_coord(base - offset)
        k += 1


@dataclass(frozen=True)
class Grid:
    """Lines x = ox + i*cell and y = oy + j*cell for every integer i, j.

    Cell (i, j) is the open square between vertical lines i and i+1 and
    horizontal lines j and j+1.
    """

    origin: XY
    cell: Coord

    def __post_init__(self) -> None:
        if not self.cell > 0:
            raise InstanceError(f"grid cell must be positive, got {self.cell}", field="cell")

    @classmethod
    def avoiding(cls, points: Iterable[XY], cell: Coord) -> "Grid":
        """Grid of the given cell size with no point on a line.

        The origin is (min_x - 1/4, min_y - 1/4) whenever that keeps lines off
        the points, otherwise a smaller fraction of the cell.
        """
        pts = list(points)
        if not pts:
            return cls((Fraction(-1, 4), Fraction(-1, 4)), as_coord(cell))
        xs = [x for x, _ in pts]
        ys = [y for _, y in pts]
        ox = _free_offset(xs, min(xs), cell)
        oy = _free_offset(ys, min(ys), cell)
        return cls((ox, oy), as_coord(cell))

    def coarsen(self, factor: int) -> "Grid":
        """Grid on the same origin with ``factor`` times the cell; its lines are a subset of ours."""
        return Grid(self.origin, as_coord(self.cell * factor))

    def vline(self, i: int) -> Coord:
        return as_coord(self.origin[0] + i * self.cell)

    def hline(self, j: int) -> Coord:
        return as_coord(self.origin[1] + j * self.cell)

    def _index(self, value: Coord, origin: Coord) -> int:
        offset = Fraction(value - origin) / self.cell
        if offset.denominator == 1:
            raise InstanceError(f"coordinate {value} lies on a grid line", field="grid")
        return math.floor(offset)

    def cell_of(self, xy: XY) -> Cell:
        return (self._index(xy[0], self.origin[0]), self._index(xy[1], self.origin[1]))

    def on_line(self, xy: XY) -> bool:
        return any(
            (Fraction(v - o) / self.cell).denominator == 1 for v, o in zip(xy, self.origin)
        )

    def closest_lines(self, xy: XY, per_side: int = 2) -> Tuple[List[Coord], List[Coord]]:
        """The ``per_side`` nearest lines in each of the four directions.

        Returns:
            (vertical line abscissas, horizontal line ordinates).
        """
        ci, cj = self.cell_of(xy)
        xs = [self.vline(ci - k) for k in range(per_side)] + [self.vline(ci + 1 + k) for k in range(per_side)]
        ys = [self.hline(cj - k) for k in range(per_side)] + [self.hline(cj + 1 + k) for k in range(per_side)]
        return sorted(xs), sorted(ys)

    def lines_within(self, xy: XY, dist: Coord) -> Tuple[List[Coord], List[Coord]]:
        """All vertical lines with |x(L) - x| <= dist and horizontal lines with |y(L) - y| <= dist."""
        return (
            self._axis_within(xy[0], self.origin[0], dist, self.vline),
            self._axis_within(xy[1], self.origin[1], dist, self.hline),
        )

    def _axis_within(self, value, origin, dist, line) -> List[Coord]:
        lo = math.ceil(Fraction(value - dist - origin) / self.cell)
        hi = math.floor(Fraction(value + dist - origin) / self.cell)
        return [line(i) for i in range(lo, hi + 1)]
