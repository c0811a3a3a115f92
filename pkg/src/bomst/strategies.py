"""Grouping strategies for the second phase.

A priori strategies build the whole grouping up front from first-phase
geometry; dynamic strategies pick the next group from what coverage has left
uncovered.  Strategy labels accepted everywhere (CLI included):

    F1 F2 F3 F4        fixed-size groups of 1..4 triangles
    SA2.0 SA2.5        angle-based splitting, stopping at that average size
    GA2 GA3            greedy merge maximizing the group angle, window 2/3
    GN2 GN3            greedy merge maximizing the remaining-point bound
    SRKB4              one triangle at a time, largest bound first, simple coverage
    ECU                as SRKB4 with extended coverage and bound updates
    GAEC2 GAEC3        greedy angle windows with extended coverage
    GNECU2 GNECU3      greedy bound windows with extended coverage and updates

All strategies return the same nondominated set; they differ only in how many
solutions the ranking sessions enumerate along the way.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .geometry import ANGLE_EPS, Point, Triangle, group_angle, validate_grouping
from .phase1 import ExtremeSet, dichotomic_search
from .phase2 import BudgetExceededError, SearchState, apply_coverage, explore_group

APRIORI_KINDS = ("fixed", "greedy", "split")
DYNAMIC_KINDS = ("srkb4", "ecu", "gaec", "gnecu")

STRATEGY_LABELS = (
    "F1", "F2", "F3", "F4",
    "SA2.0", "SA2.5",
    "GA2", "GA3", "GN2", "GN3",
    "SRKB4", "ECU",
    "GAEC2", "GAEC3", "GNECU2", "GNECU3",
)


@dataclass(frozen=True)
class StrategySpec:
    label: str
    kind: str
    size: int | None = None  # s for fixed, t for greedy windows
    measure: str | None = None  # "angle" | "nd_bound"
    stop: tuple | None = None  # ("max_size", k) | ("avg_size", a)

    def __post_init__(self):
        if self.kind not in APRIORI_KINDS + DYNAMIC_KINDS:
            raise ValueError(f"unknown strategy kind {self.kind!r}")


def parse_strategy(label: str) -> StrategySpec:
    name = label.strip()
    m = re.fullmatch(r"F(\d+)", name)
    if m:
        s = int(m.group(1))
        if s < 1:
            raise ValueError(f"fixed group size must be >= 1 in {label!r}")
        return StrategySpec(name, "fixed", size=s)
    m = re.fullmatch(r"SA(\d+(?:\.\d+)?)", name)
    if m:
        a = float(m.group(1))
        if a <= 1.0:
            raise ValueError(f"average-size stop must exceed 1 in {label!r}")
        return StrategySpec(name, "split", measure="angle", stop=("avg_size", a))
    m = re.fullmatch(r"GA(\d+)", name)
    if m:
        return StrategySpec(name, "greedy", size=_window(label, m.group(1)), measure="angle")
    m = re.fullmatch(r"GN(\d+)", name)
    if m:
        return StrategySpec(name, "greedy", size=_window(label, m.group(1)), measure="nd_bound")
    if name == "SRKB4":
        return StrategySpec(name, "srkb4")
    if name == "ECU":
        return StrategySpec(name, "ecu")
    m = re.fullmatch(r"GAEC(\d+)", name)
    if m:
        return StrategySpec(name, "gaec", size=_window(label, m.group(1)), measure="angle")
    m = re.fullmatch(r"GNECU(\d+)", name)
    if m:
        return StrategySpec(name, "gnecu", size=_window(label, m.group(1)), measure="nd_bound")
    raise ValueError(f"unknown strategy label {label!r}")


def _window(label: str, digits: str) -> int:
    t = int(digits)
    if t < 2:
        raise ValueError(f"greedy window must be >= 2 in {label!r}")
    return t


def _segment(extremes: list[Point], k: int) -> tuple[Point, Point]:
    """Hull segment under triangle k (1-based)."""
    return (extremes[k - 1], extremes[k])


def _window_angle(extremes: list[Point], first: int, last: int) -> float:
    """Angle between a window's first and last segments; singletons rank worst."""
    if first == last:
        return math.pi / 2
    return group_angle(_segment(extremes, first), _segment(extremes, last))


def fixed_grouping(first: int, last: int, s: int) -> list[tuple[int, int]]:
    """Groups of s adjacent triangles from the left; the remainder, if any,
    forms a shorter trailing group at the largest-f1 end."""
    m = last - first + 1
    if m <= 0:
        return []
    q, rem = divmod(m, s)
    groups = [(first + k * s, first + k * s + s - 1) for k in range(q)]
    if rem:
        groups.append((last - rem + 1, last))
    return groups


def greedy_grouping(
    extremes: list[Point],
    triangles: list[Triangle],
    first: int,
    last: int,
    t: int,
    measure: str,
) -> list[tuple[int, int]]:
    """Repeatedly fix the best window of t consecutive ungrouped triangles,
    shrinking t when no such window remains; leftovers become singletons."""
    if last < first:
        return []
    grouped = [False] * (last + 2)
    groups: list[tuple[int, int]] = []
    size = t
    while size >= 2:
        while True:
            best: tuple[int, int] | None = None
            best_angle = 0.0
            best_bound = -1
            for f in range(first, last - size + 2):
                l = f + size - 1
                if any(grouped[f : l + 1]):
                    continue
                if measure == "angle":
                    val = _window_angle(extremes, f, l)
                    if best is None or val > best_angle + ANGLE_EPS:
                        best, best_angle = (f, l), val
                else:
                    val = sum(tr.initial_nd_bound for tr in triangles[f - 1 : l])
                    if best is None or val > best_bound:
                        best, best_bound = (f, l), val
            if best is None:
                break
            groups.append(best)
            for k in range(best[0], best[1] + 1):
                grouped[k] = True
        size -= 1
    for k in range(first, last + 1):
        if not grouped[k]:
            groups.append((k, k))
    return sorted(groups)


def split_grouping(
    extremes: list[Point],
    first: int,
    last: int,
    stop: tuple,
) -> list[tuple[int, int]]:
    """Start from one group and split at the extreme point whose meeting
    segments form the smallest angle, until the stop criterion holds."""
    if last < first:
        return []
    m = last - first + 1
    groups: list[tuple[int, int]] = [(first, last)]
    # candidate split points are the interior extremes of the active range;
    # splitting a group [f..l] at point c yields [f..c-1] and [c..l]
    candidates = set(range(first + 1, last + 1))
    angle_at = {c: group_angle(_segment(extremes, c - 1), _segment(extremes, c)) for c in candidates}

    def stop_met() -> bool:
        kind, arg = stop
        if kind == "max_size":
            return all(l - f + 1 <= arg for f, l in groups)
        if kind == "avg_size":
            return m / len(groups) <= arg + ANGLE_EPS
        raise ValueError(f"unknown stop criterion {stop!r}")

    while not stop_met():
        f, l = max(groups, key=lambda g: (g[1] - g[0] + 1, -g[0]))
        in_range = sorted(c for c in candidates if f < c <= l)
        if not in_range:
            break
        # smallest angle wins; ties within tolerance keep the smallest index
        c = in_range[0]
        for other in in_range[1:]:
            if angle_at[other] < angle_at[c] - ANGLE_EPS:
                c = other
        candidates.discard(c)
        groups.remove((f, l))
        groups.extend([(f, c - 1), (c, l)])
    return sorted(groups)


def apriori_grouping(spec: StrategySpec, state: SearchState) -> list[tuple[int, int]]:
    """The grouping an a priori strategy would explore on this state."""
    lo, hi = state.active_first, state.active_last
    if spec.kind == "fixed":
        groups = fixed_grouping(lo, hi, spec.size)
    elif spec.kind == "greedy":
        groups = greedy_grouping(state.extremes, state.triangles, lo, hi, spec.size, spec.measure)
    elif spec.kind == "split":
        groups = split_grouping(state.extremes, lo, hi, spec.stop)
    else:
        raise ValueError(f"{spec.label} is not an a priori strategy")
    validate_grouping(groups, lo, hi)
    return groups


@dataclass
class SolveResult:
    y_n: list[Point]
    extreme_set: ExtremeSet
    state: SearchState | None
    enumerated: int
    solved: bool


def solve(problem, strategy: StrategySpec | str, *, max_enumerations: int | None = None) -> SolveResult:
    """Run the full two-phase method on a problem with the given strategy."""
    spec = parse_strategy(strategy) if isinstance(strategy, str) else strategy
    extreme_set = dichotomic_search(problem)
    if len(extreme_set.points) == 1:
        return SolveResult(list(extreme_set.points), extreme_set, None, 0, True)
    state = SearchState.build(problem, extreme_set.points, max_total=max_enumerations)
    solved = True
    try:
        if not state.is_vacuous:
            if spec.kind in APRIORI_KINDS:
                _run_apriori(state, spec)
            else:
                _run_dynamic(state, spec)
    except BudgetExceededError:
        solved = False
    return SolveResult(state.nondominated_points(), extreme_set, state, state.total_enumerated, solved)


def _run_apriori(state: SearchState, spec: StrategySpec) -> None:
    for f, l in apriori_grouping(spec, state):
        group = state.group(f, l)
        outcome = explore_group(state, group)
        apply_coverage(state, group, outcome.stop_value, extended=True)


def _run_dynamic(state: SearchState, spec: StrategySpec) -> None:
    if spec.kind in ("srkb4", "ecu"):
        _run_single_triangle(state, extended=(spec.kind == "ecu"))
    else:
        _run_windowed(state, spec)


def _run_single_triangle(state: SearchState, *, extended: bool) -> None:
    """Explore one uncovered triangle at a time, largest remaining bound first.

    With extended coverage the bound reflects only surviving zones, so partial
    coverage reorders (and often removes) later explorations; simple coverage
    ranks by the initial bound and keeps no partial information.
    """
    while True:
        pending = [t for t in state.active_triangles() if t.zones]
        if not pending:
            return
        if extended:
            target = max(pending, key=lambda t: (t.current_nd_bound(), -t.index))
        else:
            target = max(pending, key=lambda t: (t.initial_nd_bound, -t.index))
        group = state.group(target.index, target.index)
        outcome = explore_group(state, group)
        apply_coverage(state, group, outcome.stop_value, extended=extended)


def _run_windowed(state: SearchState, spec: StrategySpec) -> None:
    """Greedy windows over maximal uncovered runs, with extended coverage.

    Runs shorter than the window parameter yield a window of the run's
    length; grouping across a covered gap is never attempted.
    """
    t = spec.size
    while True:
        runs = _uncovered_runs(state)
        if not runs:
            return
        windows: list[tuple[int, int]] = []
        for a, b in runs:
            if b - a + 1 >= t:
                windows.extend((f, f + t - 1) for f in range(a, b - t + 2))
            else:
                windows.append((a, b))
        best = windows[0]
        if spec.measure == "angle":
            best_val = _window_angle(state.extremes, *best)
            for win in windows[1:]:
                val = _window_angle(state.extremes, *win)
                if val > best_val + ANGLE_EPS:
                    best, best_val = win, val
        else:
            best_val = _window_bound(state, *best)
            for win in windows[1:]:
                val = _window_bound(state, *win)
                if val > best_val:
                    best, best_val = win, val
        group = state.group(*best)
        outcome = explore_group(state, group)
        apply_coverage(state, group, outcome.stop_value, extended=True)


def _window_bound(state: SearchState, first: int, last: int) -> int:
    return sum(t.current_nd_bound() for t in state.triangles[first - 1 : last])


def _uncovered_runs(state: SearchState) -> list[tuple[int, int]]:
    runs: list[tuple[int, int]] = []
    start = None
    for tri in state.active_triangles():
        if tri.zones:
            if start is None:
                start = tri.index
        elif start is not None:
            runs.append((start, tri.index - 1))
            start = None
    if start is not None:
        runs.append((start, state.active_last))
    return runs
