"""Closed 1-D intervals: maximum independent set and minimum hitting set."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, List, Tuple

from src.errors import InstanceError

from .model import Coord


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with lo < hi. ``tag`` rides along and is ignored by comparisons."""

    lo: Coord
    hi: Coord
    tag: Any = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise InstanceError(f"invalid interval lo={self.lo} hi={self.hi}", field="intervals")

    def contains(self, value: Coord) -> bool:
        return self.lo <= value <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        # closed intervals: a shared endpoint counts
        return self.lo <= other.hi and other.lo <= self.hi


class IntervalSet:
    def __init__(self, intervals: Iterable[Interval] = ()):
        self.intervals: Tuple[Interval, ...] = tuple(intervals)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Coord, Coord]]) -> "IntervalSet":
        return cls(Interval(lo, hi) for lo, hi in pairs)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def hit_by(self, points: Iterable[Coord]) -> bool:
        """True if every interval contains at least one of ``points``."""
        pts = sorted(set(points))
        return all(any(iv.contains(p) for p in pts) for iv in self.intervals)


def _by_right_end(intervals: Iterable[Interval]) -> List[Interval]:
    return sorted(intervals, key=lambda iv: (iv.hi, iv.lo))


def interval_mis(intervals: Iterable[Interval]) -> List[Interval]:
    """Maximum set of pairwise disjoint closed intervals (earliest right end first)."""
    chosen: List[Interval] = []
    for iv in _by_right_end(intervals):
        if not chosen or iv.lo > chosen[-1].hi:
            chosen.append(iv)
    return chosen


def interval_hitting_set(intervals: Iterable[Interval]) -> List[Coord]:
    """Minimum stabbing set: the right end of every interval the previous picks miss.

    Its size equals ``len(interval_mis(intervals))``.
    """
    stabs: List[Coord] = []
    for iv in _by_right_end(intervals):
        if not stabs or iv.lo > stabs[-1]:
            stabs.append(iv.hi)
    return stabs
