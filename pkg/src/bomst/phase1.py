"""First phase: dichotomic search for the extreme supported points.

Recursively bisects the objective space between the two lexicographic optima.
Every scalarized solve breaks weighted-value ties lexicographically on f1,
which guarantees the returned point is a vertex of the lower-left hull (the
f1-smallest point of the optimal face), so no supported nonextreme point can
sneak into the output.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import Point, Weight, group_weight, weighted_value


@dataclass
class ExtremeSet:
    """Extreme supported points ordered by increasing f1, one solution each."""

    points: list[Point]
    solutions: list
    scalarized_solve_count: int

    @property
    def triangle_count(self) -> int:
        return len(self.points) - 1


def dichotomic_search(problem) -> ExtremeSet:
    """All extreme supported points of ``problem``, left to right.

    ``problem`` needs ``weighted_min(w, tiebreak)`` returning a solution with
    a ``.point`` attribute (spanning-tree instances and point-list adapters
    both qualify).
    """
    left = problem.weighted_min(Weight(1, 0), tiebreak="f2")
    right = problem.weighted_min(Weight(0, 1), tiebreak="f1")
    count = 2
    if left.point == right.point:
        return ExtremeSet([left.point], [left], count)

    points: list[Point] = [left.point]
    solutions: list = [left]
    # explicit stack; recursion depth would otherwise scale with the frontier
    stack: list[tuple] = [(left, right, False)]
    while stack:
        lo, hi, emit_lo = stack.pop()
        if emit_lo:
            points.append(lo.point)
            solutions.append(lo)
            continue
        w = group_weight(lo.point, hi.point)
        sol = problem.weighted_min(w, tiebreak="f1")
        count += 1
        if weighted_value(w, sol.point) < weighted_value(w, lo.point):
            # found a new vertex strictly below the chord: split the segment,
            # keeping left-to-right output order (right segment pushed first)
            stack.append((sol, hi, False))
            stack.append((sol, None, True))
            stack.append((lo, sol, False))
    points.append(right.point)
    solutions.append(right)
    return ExtremeSet(points, solutions, count)
