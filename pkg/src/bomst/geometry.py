"""Objective-space primitives: dominance, weights, search zones, grouping measures.

Everything here is exact integer arithmetic except the group angle, which is
the only floating-point quantity in the solver (it merely ranks candidate
merges and never affects correctness).
"""

from __future__ import annotations

import math
from collections import namedtuple
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

#: Comparison tolerance for angle values (the only floats in the solver).
ANGLE_EPS = 1e-9


class Point(NamedTuple):
    """A point in objective space: the image (f1, f2) of a feasible solution."""

    z1: int
    z2: int


class Weight(namedtuple("Weight", ["w1", "w2"])):
    """A non-negative, non-null weight vector for weighted-sum scalarization."""

    __slots__ = ()

    def __new__(cls, w1: int, w2: int):
        if w1 < 0 or w2 < 0 or (w1 == 0 and w2 == 0):
            raise ValueError(f"weight vector must be non-negative and non-null, got ({w1}, {w2})")
        return super().__new__(cls, w1, w2)

    def value(self, z: Point) -> int:
        return self.w1 * z.z1 + self.w2 * z.z2


class Relation(Enum):
    EQUAL = "equal"
    A_DOMINATES_B = "a_dominates_b"
    B_DOMINATES_A = "b_dominates_a"
    INCOMPARABLE = "incomparable"


def weakly_dominates(a: Point, b: Point) -> bool:
    """a is componentwise <= b."""
    return a.z1 <= b.z1 and a.z2 <= b.z2


def dominates(a: Point, b: Point) -> bool:
    """a is componentwise <= b and differs from b."""
    return a != b and a.z1 <= b.z1 and a.z2 <= b.z2


def compare(a: Point, b: Point) -> Relation:
    """Classify the dominance relation between two objective points."""
    if a == b:
        return Relation.EQUAL
    if weakly_dominates(a, b):
        return Relation.A_DOMINATES_B
    if weakly_dominates(b, a):
        return Relation.B_DOMINATES_A
    return Relation.INCOMPARABLE


def weighted_value(w: Weight, z: Point) -> int:
    return w.w1 * z.z1 + w.w2 * z.z2


def group_weight(left: Point, right: Point) -> Weight:
    """Weight vector orthogonal to the segment from ``left`` to ``right``.

    ``left`` must be up-left of ``right`` (smaller f1, larger f2), as holds for
    any ordered pair of extreme supported points.
    """
    if not (left.z1 < right.z1 and left.z2 > right.z2):
        raise ValueError(f"malformed extreme sequence: {left} !< {right}")
    return Weight(left.z2 - right.z2, right.z1 - left.z1)


def initial_upper_bound(left: Point, right: Point) -> Point:
    """Corner bound of a search zone with no interior points known yet."""
    return Point(right.z1 - 1, left.z2 - 1)


def local_upper_bounds(left: Point, right: Point, interior: list[Point]) -> list[Point]:
    """Staircase of local upper bounds induced by the known points of a zone.

    ``interior`` must be strictly increasing in z1 and strictly decreasing in
    z2, strictly inside the rectangle spanned by ``left`` and ``right``.  With
    r interior points the result has r + 1 bounds; with none it degenerates to
    the single corner bound.
    """
    chain = [left, *interior, right]
    return [Point(chain[k + 1].z1 - 1, chain[k].z2 - 1) for k in range(len(chain) - 1)]


def gap_capacity(left: Point, right: Point) -> int:
    """Max number of integer points a single staircase gap can still hide."""
    return min(right.z1 - left.z1, left.z2 - right.z2) - 1


def nd_bound(left: Point, right: Point, interior: list[Point] = ()) -> int:
    """Upper bound on the number of unknown nondominated points in a triangle.

    With no interior points this is min(f1 gap, f2 drop) - 1; with known
    interior points it is the sum of the per-gap bounds, never negative.
    """
    chain = [left, *interior, right]
    total = sum(gap_capacity(chain[k], chain[k + 1]) for k in range(len(chain) - 1))
    return max(total, 0)


def is_empty_triangle(left: Point, right: Point) -> bool:
    """A triangle too thin to contain any integer nondominated point."""
    return right.z1 - left.z1 == 1 or left.z2 - right.z2 == 1


Segment = tuple[Point, Point]


def group_angle(first_seg: Segment, last_seg: Segment) -> float:
    """Largest angle at the intersection of the lines through two hull segments.

    Collinear segments give exactly pi; the result always lies in (pi/2, pi].
    """
    d1 = _direction(first_seg)
    d2 = _direction(last_seg)
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    if cross == 0:
        return math.pi
    dot = d1[0] * d2[0] + d1[1] * d2[1]
    cos_acute = dot / math.sqrt((d1[0] ** 2 + d1[1] ** 2) * (d2[0] ** 2 + d2[1] ** 2))
    cos_acute = min(1.0, max(-1.0, cos_acute))
    return math.pi - math.acos(cos_acute)


def _direction(seg: Segment) -> tuple[int, int]:
    a, b = seg
    if not (a.z1 < b.z1 and a.z2 > b.z2):
        raise ValueError(f"segment must run down-right: {a} -> {b}")
    return (b.z1 - a.z1, b.z2 - a.z2)


class Zone(NamedTuple):
    """An active sub-rectangle of a triangle, delimited by two chain points.

    The chain points are either triangle corners or accepted interior points;
    the zone's upper bound is the integer corner just inside them.
    """

    left: Point
    right: Point

    @property
    def upper_bound(self) -> Point:
        return Point(self.right.z1 - 1, self.left.z2 - 1)

    @property
    def capacity(self) -> int:
        return gap_capacity(self.left, self.right)


class Status(Enum):
    UNEXPLORED = "unexplored"
    PARTIALLY_COVERED = "partially_covered"
    COVERED = "covered"


@dataclass
class Triangle:
    """Search zone between two adjacent extreme supported points.

    ``interior`` holds accepted nondominated points sorted by z1; ``zones``
    holds the still-active sub-rectangles (also sorted by z1).  A triangle is
    covered exactly when no zone remains active.
    """

    index: int  # 1-based position along the frontier
    left: Point
    right: Point
    weight: Weight
    interior: list[Point] = field(default_factory=list)
    zones: list[Zone] = field(default_factory=list)
    explored: bool = False
    had_deactivation: bool = False
    initial_nd_bound: int = 0

    @classmethod
    def between(cls, index: int, left: Point, right: Point) -> "Triangle":
        w = group_weight(left, right)
        return cls(
            index=index,
            left=left,
            right=right,
            weight=w,
            zones=[Zone(left, right)],
            initial_nd_bound=nd_bound(left, right),
        )

    @property
    def status(self) -> Status:
        if not self.zones:
            return Status.COVERED
        if self.had_deactivation:
            return Status.PARTIALLY_COVERED
        return Status.UNEXPLORED

    @property
    def is_empty(self) -> bool:
        return is_empty_triangle(self.left, self.right)

    @property
    def active_upper_bounds(self) -> list[Point]:
        return [z.upper_bound for z in self.zones]

    @property
    def all_upper_bounds(self) -> list[Point]:
        """The full staircase for the current interior, active or not."""
        return local_upper_bounds(self.left, self.right, self.interior)

    def current_nd_bound(self) -> int:
        """Remaining-point bound summed over active zones only."""
        return max(sum(z.capacity for z in self.zones), 0)


@dataclass(frozen=True)
class Group:
    """A contiguous run of triangles explored by one ranking session."""

    first: int
    last: int
    weight: Weight
    stop_value: float | None = None  # weighted value at which ranking stopped

    def __post_init__(self):
        if self.first > self.last:
            raise ValueError(f"group range [{self.first}, {self.last}] is empty")

    @property
    def size(self) -> int:
        return self.last - self.first + 1

    def contains(self, index: int) -> bool:
        return self.first <= index <= self.last


def make_group(extremes: list[Point], first: int, last: int) -> Group:
    """Group over triangles ``first..last`` (1-based) of the given frontier."""
    return Group(first, last, group_weight(extremes[first - 1], extremes[last]))


def group_nd_bound(triangles: list[Triangle], first: int, last: int, *, current: bool = False) -> int:
    """Sum of per-triangle bounds over a contiguous range (1-based, inclusive)."""
    tris = triangles[first - 1 : last]
    if current:
        return sum(t.current_nd_bound() for t in tris)
    return sum(t.initial_nd_bound for t in tris)


def validate_grouping(groups: list[tuple[int, int]], first: int, last: int) -> None:
    """Check that groups are contiguous, non-overlapping, and cover first..last."""
    if first > last:
        if groups:
            raise ValueError("nonempty grouping over empty range")
        return
    expected = first
    for f, l in groups:
        if f != expected or l < f:
            raise ValueError(f"grouping is not a contiguous partition at [{f}, {l}]")
        expected = l + 1
    if expected != last + 1:
        raise ValueError(f"grouping stops at {expected - 1}, expected {last}")
