import math

import pytest

from bomst.geometry import Point, Status, Triangle
from bomst.phase2 import (
    BudgetExceededError,
    SearchState,
    apply_coverage,
    explore_group,
    trim_empty_extremes,
    update_nd,
    update_ub,
)
from bomst.phase1 import dichotomic_search
from bomst.ranking import PointListProblem, SpanningTreeProblem
from conftest import gen_instance

# Synthetic coverage scenario: five triangles; exploring the second fully
# covers its neighbours on both sides, partially covers the fourth, and never
# reaches the fifth.  All bound values below were hand-computed under the
# second triangle's weight (28, 14); the stop value is 1638 (the first
# emission in line after the final threshold 1176).
FIG5_EXTREMES = [Point(0, 80), Point(6, 58), Point(20, 30), Point(32, 15), Point(55, 7), Point(80, 2)]
FIG5_POINTS = FIG5_EXTREMES + [Point(12, 47), Point(35, 14)]
FIG5_SEED = (Point(35, 14),)


def build_fig5_state():
    problem = PointListProblem(FIG5_POINTS)
    return SearchState.build(problem, FIG5_EXTREMES, seed_points=FIG5_SEED)


class TestTrim:
    def _triangles(self, z1_steps, z2_drops, top):
        pts = [Point(0, top)]
        for dx, dy in zip(z1_steps, z2_drops):
            pts.append(Point(pts[-1].z1 + dx, pts[-1].z2 - dy))
        return [Triangle.between(i + 1, a, b) for i, (a, b) in enumerate(zip(pts, pts[1:]))]

    def test_interior_empty_triangle_kept(self):
        tris = self._triangles([1, 1, 4, 1, 3, 1], [9, 6, 8, 1, 3, 1], 28)
        assert [t.initial_nd_bound for t in tris] == [0, 0, 3, 0, 2, 0]
        lo, hi = trim_empty_extremes(tris)
        assert (lo, hi) == (3, 5)
        assert [t.status for t in tris] == [
            Status.COVERED, Status.COVERED, Status.UNEXPLORED,
            Status.UNEXPLORED, Status.UNEXPLORED, Status.COVERED,
        ]

    def test_no_empty_triangles(self):
        tris = self._triangles([3, 4], [5, 4], 9)
        assert trim_empty_extremes(tris) == (1, 2)

    def test_all_empty_is_vacuous(self):
        tris = self._triangles([1, 1], [2, 1], 3)
        lo, hi = trim_empty_extremes(tris)
        assert lo > hi


class TestUpdateNd:
    def test_k3_acceptance(self, k3_problem):
        ext = dichotomic_search(k3_problem)
        state = SearchState.build(k3_problem, ext.points)
        assert update_nd(state, Point(5, 5)) == 1
        tri = state.triangles[0]
        assert tri.interior == [Point(5, 5)]
        assert tri.active_upper_bounds == [Point(4, 5), Point(5, 4)]

    def test_duplicate_rejected(self, k3_problem):
        ext = dichotomic_search(k3_problem)
        state = SearchState.build(k3_problem, ext.points)
        update_nd(state, Point(5, 5))
        before = [list(t.interior) for t in state.triangles]
        assert update_nd(state, Point(5, 5)) is None
        assert [list(t.interior) for t in state.triangles] == before

    def test_point_outside_zones_rejected(self, k3_problem):
        ext = dichotomic_search(k3_problem)
        state = SearchState.build(k3_problem, ext.points)
        update_nd(state, Point(5, 5))  # bounds now {(4,5), (5,4)}
        assert update_nd(state, Point(4, 8)) is None

    def test_extreme_coordinates_rejected(self, k3_problem):
        ext = dichotomic_search(k3_problem)
        state = SearchState.build(k3_problem, ext.points)
        assert update_nd(state, Point(3, 9)) is None  # shares z1 with an extreme
        assert update_nd(state, Point(2, 9)) is None  # left of the frontier
        assert update_nd(state, Point(9, 9)) is None  # right of the frontier

    def test_routes_to_containing_triangle(self):
        state = build_fig5_state()
        assert update_nd(state, Point(12, 47)) == 2
        assert update_nd(state, Point(40, 12)) == 4
        assert state.triangles[3].interior == [Point(35, 14), Point(40, 12)]


class TestUpdateUb:
    def test_fresh_triangle(self):
        extremes = [Point(2, 9), Point(5, 3)]
        state = SearchState.build(PointListProblem(extremes), extremes)
        assert update_ub(state, state.group(1, 1)) == Point(4, 8)

    def test_k3_tie_prefers_smaller_z1(self, k3_problem):
        ext = dichotomic_search(k3_problem)
        state = SearchState.build(k3_problem, ext.points)
        update_nd(state, Point(5, 5))
        # both bounds value 27 under weight (3,3); smaller z1 wins
        assert update_ub(state, state.group(1, 1)) == Point(4, 5)

    def test_across_triangles_argmax(self):
        state = build_fig5_state()
        g = state.group(1, 2)
        # values under w=(80-30, 20-0)=(50,20): (5,79)=1830, (19,57)=2090
        assert update_ub(state, g) == Point(19, 57)

    def test_empty_union(self):
        extremes = [Point(0, 4), Point(2, 2), Point(4, 0)]
        state = SearchState.build(PointListProblem(extremes), extremes)
        for tri in state.triangles:
            tri.zones = []
        assert update_ub(state, state.group(1, 2)) is None


class TestExploreGroup:
    def test_k3_full_trace(self, k3_problem):
        ext = dichotomic_search(k3_problem)
        state = SearchState.build(k3_problem, ext.points)
        outcome = explore_group(state, state.group(1, 1))
        assert outcome.enumerated == 3
        assert outcome.stop_value == math.inf  # exhausted, nothing pruned
        assert outcome.completed
        assert state.triangles[0].interior == [Point(5, 5)]
        assert state.nondominated_points() == [Point(3, 6), Point(5, 5), Point(6, 3)]
        assert state.total_enumerated == 3

    def test_adapter_trace(self):
        # weight (6,6); u* starts at (5,5)=60; accepting (2,2) tightens the
        # bounds to {(1,5), (5,1)} at 36 each; both extremes get emitted at 36
        points = [Point(0, 6), Point(2, 2), Point(6, 0)]
        extremes = [Point(0, 6), Point(6, 0)]
        state = SearchState.build(PointListProblem(points), extremes)
        outcome = explore_group(state, state.group(1, 1))
        assert outcome.enumerated == 3
        assert outcome.stop_value == math.inf
        assert state.nondominated_points() == [Point(0, 6), Point(2, 2), Point(6, 0)]

    def test_covered_group_skipped(self):
        extremes = [Point(0, 4), Point(2, 2), Point(4, 0)]
        state = SearchState.build(PointListProblem(extremes), extremes)
        for tri in state.triangles:
            tri.zones = []
        outcome = explore_group(state, state.group(1, 2))
        assert outcome.enumerated == 0 and outcome.stop_value is None and outcome.completed

    def test_budget_abort(self):
        state = build_fig5_state()
        outcome = explore_group(state, state.group(2, 2), budget=2)
        assert outcome.enumerated == 2 and not outcome.completed and outcome.stop_value is None
        assert not state.triangles[1].explored

    def test_global_budget_raises(self, k3_problem):
        ext = dichotomic_search(k3_problem)
        state = SearchState.build(k3_problem, ext.points, max_total=2)
        with pytest.raises(BudgetExceededError):
            explore_group(state, state.group(1, 1))

    def test_empty_triangle_costs_nothing(self):
        # unit-thin triangle between two real ones: its bound sits below the
        # minimum feasible value, so a singleton exploration emits nothing
        extremes = [Point(0, 9), Point(4, 5), Point(5, 4), Point(9, 0)]
        state = SearchState.build(PointListProblem(extremes), extremes)
        outcome = explore_group(state, state.group(2, 2))
        assert outcome.enumerated == 0
        assert outcome.stop_value is not None and outcome.completed


class TestCoverageScenario:
    def test_fig5_statuses(self):
        state = build_fig5_state()
        group = state.group(2, 2)
        outcome = explore_group(state, group)
        assert outcome.enumerated == 6
        assert outcome.stop_value == 1638
        newly = apply_coverage(state, group, outcome.stop_value, extended=True)
        assert newly == [1, 2, 3]
        assert [t.status for t in state.triangles] == [
            Status.COVERED,
            Status.COVERED,
            Status.COVERED,
            Status.PARTIALLY_COVERED,
            Status.UNEXPLORED,
        ]
        assert [t.explored for t in state.triangles] == [False, True, False, False, False]
        # the fourth triangle kept exactly its right zone
        assert state.triangles[3].active_upper_bounds == [Point(54, 13)]

    def test_simple_coverage_discards_partial_information(self):
        state = build_fig5_state()
        group = state.group(2, 2)
        outcome = explore_group(state, group)
        apply_coverage(state, group, outcome.stop_value, extended=False)
        # fully-below triangles retire, but the fourth keeps both zones
        assert [t.status for t in state.triangles] == [
            Status.COVERED, Status.COVERED, Status.COVERED,
            Status.UNEXPLORED, Status.UNEXPLORED,
        ]
        assert len(state.triangles[3].zones) == 2

    def test_partial_deactivation_rule(self):
        # bounds valued {30, 50} against stop value 40: one zone survives
        extremes = [Point(0, 11), Point(4, 7), Point(10, 1)]
        state = SearchState.build(PointListProblem(extremes), extremes)
        tri = state.triangles[1]
        update_nd(state, Point(6, 5))
        g = state.group(2, 2)
        values = sorted(g.weight.value(z.upper_bound) for z in tri.zones)
        cut = (values[0] + values[1]) // 2
        apply_coverage(state, g, cut, extended=True)
        assert tri.status is Status.PARTIALLY_COVERED
        assert len(tri.zones) == 1

    def test_exhaustion_covers_everything(self):
        extremes = [Point(0, 9), Point(3, 5), Point(9, 0)]
        state = SearchState.build(PointListProblem(extremes), extremes)
        g = state.group(1, 2)
        apply_coverage(state, g, math.inf, extended=True)
        assert all(t.status is Status.COVERED for t in state.triangles)

    def test_aborted_exploration_covers_nothing(self):
        state = build_fig5_state()
        g = state.group(2, 2)
        assert apply_coverage(state, g, None, extended=True) == []
        assert all(t.status is not Status.COVERED for t in state.triangles)


class TestStateOnInstances:
    @pytest.mark.parametrize("seed", [3, 5, 21])
    def test_interiors_stay_mutually_nondominated(self, seed):
        inst = gen_instance(7, r=60, seed=seed)
        problem = SpanningTreeProblem(inst)
        ext = dichotomic_search(problem)
        state = SearchState.build(problem, ext.points)
        if state.is_vacuous:
            pytest.skip("vacuous frontier")
        for f in range(state.active_first, state.active_last + 1):
            explore_group(state, state.group(f, f))
        pts = state.nondominated_points()
        for a in pts:
            for b in pts:
                if a != b:
                    assert not (a.z1 <= b.z1 and a.z2 <= b.z2)

    def test_seed_points_prepopulate_archives(self):
        state = build_fig5_state()
        assert state.triangles[3].interior == [Point(35, 14)]
        assert len(state.triangles[3].zones) == 2

    @pytest.mark.parametrize("seed", [2, 11])
    def test_stop_value_proves_group_complete(self, seed):
        # every feasible point cheaper than the stop value that lies in the
        # group must be in the archives once the exploration ends
        from bomst.oracle import frontier_of

        inst = gen_instance(7, r=80, seed=seed)
        problem = SpanningTreeProblem(inst)
        truth = frontier_of(inst)
        ext = dichotomic_search(problem)
        state = SearchState.build(problem, ext.points)
        if state.is_vacuous:
            pytest.skip("vacuous frontier")
        group = state.group(state.active_first, state.active_last)
        outcome = explore_group(state, group)
        found = set(state.nondominated_points())
        for p in truth.y_n:
            if p in ext.points or group.weight.value(p) >= outcome.stop_value:
                continue
            tri = state.triangles[group.first - 1 : group.last]
            in_group = any(t.left.z1 < p.z1 < t.right.z1 for t in tri)
            if in_group:
                assert p in found, p

    def test_log_sums_to_total_enumerated(self):
        inst = gen_instance(7, r=100, seed=4)
        problem = SpanningTreeProblem(inst)
        ext = dichotomic_search(problem)
        state = SearchState.build(problem, ext.points)
        for f in range(state.active_first, state.active_last + 1):
            explore_group(state, state.group(f, f))
        assert state.total_enumerated == sum(g.enumerated for g in state.per_group_log)
