"""Second phase: group exploration with archive maintenance and coverage.

A ``SearchState`` holds one triangle per adjacent pair of extreme points.
Exploring a group opens a ranking session under the group's weight and keeps
emitting while the next value does not exceed the weighted value of the
highest active local upper bound; every emitted point is routed to the
triangle whose open f1-interval contains it (whether or not that triangle
belongs to the group), accepted points split the containing zone in two, and
the stop value of a finished exploration deactivates provably exhausted zones
everywhere on the frontier.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field

from .geometry import Group, Point, Triangle, Zone, make_group

__all__ = [
    "BudgetExceededError",
    "ExploreOutcome",
    "GroupLog",
    "SearchState",
    "apply_coverage",
    "explore_group",
    "trim_empty_extremes",
    "update_nd",
    "update_ub",
]


class BudgetExceededError(RuntimeError):
    """Raised when a run exceeds its global enumeration budget."""


@dataclass
class GroupLog:
    group: Group
    enumerated: int
    stop_value: int | float | None  # None: aborted or never opened; inf: exhausted


@dataclass
class ExploreOutcome:
    enumerated: int
    stop_value: int | float | None
    completed: bool


def trim_empty_extremes(triangles: list[Triangle]) -> tuple[int, int]:
    """Deactivate leading and trailing runs of empty triangles.

    Empty triangles at the frontier ends can contain no unknown point and are
    excluded from every grouping; interior empty triangles stay groupable.
    Returns the active range as 1-based inclusive indices (first > last means
    the whole second phase is vacuous).
    """
    lo, hi = 1, len(triangles)
    while lo <= hi and triangles[lo - 1].is_empty:
        triangles[lo - 1].zones = []
        lo += 1
    while hi >= lo and triangles[hi - 1].is_empty:
        triangles[hi - 1].zones = []
        hi -= 1
    return lo, hi


@dataclass
class SearchState:
    """Mutable per-run state: triangles, archives, and enumeration accounting."""

    problem: object
    extremes: list[Point]
    triangles: list[Triangle]
    active_first: int
    active_last: int
    total_enumerated: int = 0
    per_group_log: list[GroupLog] = field(default_factory=list)
    max_total: int | None = None
    _extreme_z1: list[int] = field(default_factory=list, repr=False)

    @classmethod
    def build(
        cls,
        problem,
        extremes: list[Point],
        seed_points: tuple[Point, ...] = (),
        max_total: int | None = None,
    ) -> "SearchState":
        triangles = [
            Triangle.between(i + 1, extremes[i], extremes[i + 1]) for i in range(len(extremes) - 1)
        ]
        lo, hi = trim_empty_extremes(triangles)
        state = cls(
            problem=problem,
            extremes=list(extremes),
            triangles=triangles,
            active_first=lo,
            active_last=hi,
            max_total=max_total,
            _extreme_z1=[p.z1 for p in extremes],
        )
        for p in seed_points:
            update_nd(state, p)
        return state

    @property
    def is_vacuous(self) -> bool:
        return self.active_first > self.active_last

    def active_triangles(self) -> list[Triangle]:
        return self.triangles[self.active_first - 1 : self.active_last]

    def group(self, first: int, last: int) -> Group:
        return make_group(self.extremes, first, last)

    def nondominated_points(self) -> list[Point]:
        pts = list(self.extremes)
        for tri in self.triangles:
            pts.extend(tri.interior)
        return sorted(pts)


def locate(state: SearchState, z1: int) -> int | None:
    """Index of the triangle whose open f1-interval contains z1, if any."""
    z1s = state._extreme_z1
    i = bisect_left(z1s, z1)
    if i == 0 or i == len(z1s) or z1s[i] == z1:
        return None
    return i


def update_nd(state: SearchState, y: Point) -> int | None:
    """Archive update for an emitted point.

    Routes y to its containing triangle; accepts it when it falls strictly
    inside that triangle's rectangle, within an active zone, and below the
    zone's upper bound.  Acceptance splits the zone at y.  Returns the
    triangle index on acceptance, None otherwise (duplicates, dominated
    points, and points outside every triangle are all silently discarded).
    """
    idx = locate(state, y.z1)
    if idx is None:
        return None
    tri = state.triangles[idx - 1]
    if not (tri.right.z2 < y.z2 < tri.left.z2):
        return None
    zones = tri.zones
    zpos = bisect_left(zones, y.z1, key=lambda z: z.left.z1) - 1
    if zpos < 0:
        return None
    zone = zones[zpos]
    if not (zone.left.z1 < y.z1 < zone.right.z1):
        return None
    if y.z2 >= zone.left.z2 or y.z2 <= zone.right.z2:
        # at or above the left chain point (dominated) or at or below the
        # right one (would contradict its nondominance); either way rejected
        return None
    # session values are non-decreasing and weights positive, so an accepted
    # point can never be dominated by anything already stored
    assert all(not (p.z1 <= y.z1 and p.z2 <= y.z2) for p in tri.interior)
    ipos = bisect_left(tri.interior, y.z1, key=lambda p: p.z1)
    tri.interior.insert(ipos, y)
    zones[zpos : zpos + 1] = [Zone(zone.left, y), Zone(y, zone.right)]
    return idx


def update_ub(state: SearchState, group: Group) -> Point | None:
    """Highest active local upper bound over the group, or None if exhausted.

    Ties go to the smallest triangle index, then the smallest z1.
    """
    w = group.weight
    best: Point | None = None
    best_val = 0
    for tri in state.triangles[group.first - 1 : group.last]:
        for zone in tri.zones:
            u = zone.upper_bound
            val = w.value(u)
            if best is None or val > best_val:
                best, best_val = u, val
    return best


def explore_group(state: SearchState, group: Group, *, budget: int | None = None) -> ExploreOutcome:
    """Run one ranking session over a group until its bounds are exhausted.

    Emits while the next weighted value stays within the group's highest
    active upper bound; the first over-threshold value (never materialized,
    never counted) becomes the stop value used for coverage.  With a
    ``budget`` the exploration aborts once that many solutions were emitted
    and reports ``completed=False`` with no stop value.
    """
    u = update_ub(state, group)
    if u is None:
        state.per_group_log.append(GroupLog(group, 0, None))
        return ExploreOutcome(0, None, True)
    w = group.weight
    threshold = w.value(u)
    session = state.problem.open_session(w)
    session.set_prune_bound(threshold)
    enumerated = 0
    while True:
        peek = session.peek_value()
        if peek is None:
            floor = session.min_pruned_value
            stop: int | float | None = math.inf if floor is None else floor
            completed = True
            break
        if peek > threshold:
            floor = session.min_pruned_value
            stop = peek if floor is None else min(peek, floor)
            completed = True
            break
        if budget is not None and enumerated >= budget:
            stop = None
            completed = False
            break
        sol = session.next()
        enumerated += 1
        state.total_enumerated += 1
        if state.max_total is not None and state.total_enumerated > state.max_total:
            raise BudgetExceededError(f"enumeration budget {state.max_total} exceeded")
        accepted = update_nd(state, sol.point)
        if accepted is not None and group.contains(accepted):
            u = update_ub(state, group)
            threshold = w.value(u)
            session.set_prune_bound(threshold)
    if completed:
        for tri in state.triangles[group.first - 1 : group.last]:
            tri.explored = True
    state.per_group_log.append(GroupLog(group, enumerated, stop))
    return ExploreOutcome(enumerated, stop, completed)


def apply_coverage(
    state: SearchState,
    group: Group,
    stop_value: int | float | None,
    *,
    extended: bool = True,
) -> list[int]:
    """Deactivate zones proven exhausted by a finished exploration.

    A zone whose upper bound values below the stop value cannot hide unknown
    points.  Extended coverage persists partial deactivations across
    explorations; simple coverage only retires triangles whose zones are all
    below the stop value, discarding partial information.  Returns the
    indices of triangles that became covered.
    """
    if stop_value is None:
        return []
    w = group.weight
    newly: list[int] = []
    for tri in state.active_triangles():
        if not tri.zones:
            continue
        if extended:
            survivors = [z for z in tri.zones if w.value(z.upper_bound) >= stop_value]
            if len(survivors) == len(tri.zones):
                continue
            tri.zones = survivors
            if survivors:
                tri.had_deactivation = True
            else:
                newly.append(tri.index)
        else:
            if all(w.value(z.upper_bound) < stop_value for z in tri.zones):
                tri.zones = []
                newly.append(tri.index)
    return newly
