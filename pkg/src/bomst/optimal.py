"""Optimal grouping via shortest path on the grouping graph.

Vertex k of the grouping graph stands for the k-th extreme point of the
active range; arc (i, j) stands for the group of triangles i..j-1 and costs
exactly the number of solutions a standalone exploration of that group
enumerates.  Every contiguous grouping is a 1-to-(m+1) path, so the cheapest
grouping is a shortest path.  Arc costs are expensive, so arcs are valued
lazily: width-1 arcs are always explored in full, wider arcs get an emission
budget equal to the best path already known between their endpoints and are
dropped the moment they stop paying for themselves.  Group width is capped
(groups wider than tau essentially never appear in cheapest groupings), which
also makes the final pulling sweep linear in the number of triangles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import Point, make_group
from .phase2 import SearchState, explore_group

DEFAULT_TAU = 7


class ExplorationCosts:
    """Memoized standalone exploration costs over one instance's frontier.

    Every query explores its group from a fresh archive state, so the cost of
    a group is a pure function of the group; costs are therefore additive
    over any grouping and comparable across strategies.
    """

    def __init__(self, problem, extremes: list[Point], seed_points: tuple[Point, ...] = ()):
        self.problem = problem
        self.extremes = list(extremes)
        self.seed_points = tuple(seed_points)
        template = SearchState.build(problem, self.extremes, self.seed_points)
        self.active_first = template.active_first
        self.active_last = template.active_last
        self.total_enumerated = 0
        self._memo: dict[tuple[int, int], tuple[int, bool]] = {}

    @property
    def num_active(self) -> int:
        return max(self.active_last - self.active_first + 1, 0)

    def cost(self, first: int, last: int, budget: int | None = None) -> tuple[int, bool]:
        """(enumerated, completed) for a fresh exploration of triangles first..last.

        ``completed=False`` means the exploration was cut off by ``budget``;
        the true cost then exceeds the returned count.
        """
        key = (first, last)
        cached = self._memo.get(key)
        if cached is not None:
            cost, completed = cached
            if completed:
                if budget is not None and cost >= budget:
                    return (budget, False)  # a budgeted run would abort there
                return cached
            if budget is not None and budget <= cost:
                return (budget, False)
        state = SearchState.build(self.problem, self.extremes, self.seed_points)
        group = make_group(self.extremes, first, last)
        outcome = explore_group(state, group, budget=budget)
        self.total_enumerated += outcome.enumerated
        result = (outcome.enumerated, outcome.completed)
        prior = self._memo.get(key)
        if prior is None or (not prior[1] and (outcome.completed or outcome.enumerated > prior[0])):
            self._memo[key] = result
        return result

    def grouping_cost(self, grouping: list[tuple[int, int]]) -> int:
        """Fresh-state cost of a whole grouping: the sum of its group costs."""
        return sum(self.cost(f, l)[0] for f, l in grouping)


@dataclass
class OptimalGrouping:
    grouping: list[tuple[int, int]]  # global triangle indices
    total_cost: int
    arc_costs: dict[tuple[int, int], int] = field(default_factory=dict)  # local vertex pairs
    arcs_evaluated: int = 0
    arcs_rejected: int = 0


def optimal_grouping(costs: ExplorationCosts, tau: int = DEFAULT_TAU) -> OptimalGrouping:
    """Cheapest grouping of the active triangles, by lazy shortest path.

    Arcs are valued in increasing width, left to right; each candidate arc is
    explored with an emission budget equal to the current best path value
    between its endpoints and is created only when it comes in strictly
    under budget.
    """
    if tau < 1:
        raise ValueError("group size cap must be >= 1")
    lo = costs.active_first
    m = costs.num_active
    if m == 0:
        return OptimalGrouping([], 0)
    arcs: dict[tuple[int, int], int] = {}
    evaluated = 0
    rejected = 0
    for i in range(1, m + 1):
        cost, _ = costs.cost(lo + i - 1, lo + i - 1)
        arcs[(i, i + 1)] = cost
        evaluated += 1
    for width in range(2, min(tau, m) + 1):
        for i in range(1, m - width + 2):
            j = i + width
            bound = _best_path_between(arcs, i, j, tau)
            cost, completed = costs.cost(lo + i - 1, lo + j - 2, budget=bound)
            evaluated += 1
            if completed and cost < bound:
                arcs[(i, j)] = cost
            else:
                rejected += 1

    # pulling sweep: vertices are already in topological order
    INF = float("inf")
    sp: list[float] = [INF] * (m + 2)
    pred = [0] * (m + 2)
    sp[1] = 0
    for v in range(2, m + 2):
        for l in range(max(1, v - tau), v):
            cost = arcs.get((l, v))
            if cost is None:
                continue
            if sp[l] + cost < sp[v]:
                sp[v] = sp[l] + cost
                pred[v] = l
    grouping: list[tuple[int, int]] = []
    v = m + 1
    while v > 1:
        l = pred[v]
        grouping.append((lo + l - 1, lo + v - 2))
        v = l
    grouping.reverse()
    return OptimalGrouping(grouping, int(sp[m + 1]), arcs, evaluated, rejected)


def _best_path_between(arcs: dict[tuple[int, int], int], i: int, j: int, tau: int) -> int:
    """Shortest i -> j path over already-valued arcs (always finite: width-1
    arcs exist for every step)."""
    INF = float("inf")
    dist = {i: 0}
    for v in range(i + 1, j + 1):
        best = INF
        for l in range(max(i, v - tau), v):
            cost = arcs.get((l, v))
            if cost is not None and dist.get(l, INF) + cost < best:
                best = dist[l] + cost
        dist[v] = best
    return int(dist[j])


def exhaustive_optimal(costs: ExplorationCosts, tau: int = DEFAULT_TAU) -> OptimalGrouping:
    """Reference implementation: try every contiguous partition (parts <= tau).

    Exponential in the triangle count; only meant to validate the lazy path.
    """
    lo = costs.active_first
    m = costs.num_active
    if m == 0:
        return OptimalGrouping([], 0)
    best_cost: int | None = None
    best_parts: list[tuple[int, int]] | None = None
    stack: list[tuple[int, list[tuple[int, int]], int]] = [(1, [], 0)]
    while stack:
        start, parts, acc = stack.pop()
        if start > m:
            if best_cost is None or acc < best_cost or (acc == best_cost and parts < best_parts):
                best_cost = acc
                best_parts = parts
            continue
        for end in range(start, min(start + tau - 1, m) + 1):
            cost, _ = costs.cost(lo + start - 1, lo + end - 1)
            stack.append((end + 1, parts + [(lo + start - 1, lo + end - 1)], acc + cost))
    return OptimalGrouping(best_parts, best_cost)


def effectiveness_ratio(strategy_cost: int, optimal_cost: int) -> Fraction:
    """Exact ratio of a strategy's enumeration count to the optimal grouping's.

    A vacuous second phase has optimal cost 0 and ratio 1 by convention.
    """
    if optimal_cost == 0:
        return Fraction(1)
    if optimal_cost < 0 or strategy_cost < 0:
        raise ValueError("enumeration counts cannot be negative")
    return Fraction(strategy_cost, optimal_cost)
