import pytest

from bomst.geometry import Point, group_weight, weighted_value
from bomst.oracle import frontier_of
from bomst.phase1 import dichotomic_search
from bomst.ranking import PointListProblem, SpanningTreeProblem
from conftest import gen_instance


class TestDichotomicSearch:
    def test_k3(self, k3_problem):
        ext = dichotomic_search(k3_problem)
        assert ext.points == [Point(3, 6), Point(6, 3)]
        assert ext.scalarized_solve_count == 3
        assert ext.triangle_count == 1

    def test_degenerate_single_point(self, k4_unit):
        ext = dichotomic_search(SpanningTreeProblem(k4_unit))
        assert ext.points == [Point(3, 3)]
        assert ext.scalarized_solve_count == 2

    @pytest.mark.parametrize("n,seed", [(6, 1), (6, 5), (7, 2), (8, 3)])
    def test_matches_oracle_hull(self, n, seed):
        inst = gen_instance(n, r=100, seed=seed)
        ext = dichotomic_search(SpanningTreeProblem(inst))
        assert ext.points == frontier_of(inst).y_nse

    @pytest.mark.parametrize("n,seed", [(6, 4), (7, 7)])
    def test_solve_count_identity(self, n, seed):
        inst = gen_instance(n, r=1000, seed=seed)
        ext = dichotomic_search(SpanningTreeProblem(inst))
        if len(ext.points) >= 2:
            assert ext.scalarized_solve_count == 2 * len(ext.points) - 1

    def test_output_ordering_and_convexity(self):
        inst = gen_instance(8, r=1000, seed=11)
        pts = dichotomic_search(SpanningTreeProblem(inst)).points
        for a, b in zip(pts, pts[1:]):
            assert a.z1 < b.z1 and a.z2 > b.z2
        # consecutive slopes strictly increase toward zero (hull vertex property)
        for a, b, c in zip(pts, pts[1:], pts[2:]):
            assert (b.z2 - a.z2) * (c.z1 - b.z1) < (c.z2 - b.z2) * (b.z1 - a.z1)

    def test_solutions_reproduce_points(self):
        inst = gen_instance(7, r=500, seed=9)
        ext = dichotomic_search(SpanningTreeProblem(inst))
        for point, sol in zip(ext.points, ext.solutions):
            assert sol.point == point
            c1 = sum(inst.edges[e][2] for e in sol.edge_ids)
            c2 = sum(inst.edges[e][3] for e in sol.edge_ids)
            assert (c1, c2) == (point.z1, point.z2)

    def test_every_point_optimal_for_adjacent_weight(self):
        inst = gen_instance(7, r=200, seed=14)
        problem = SpanningTreeProblem(inst)
        pts = dichotomic_search(problem).points
        for a, b in zip(pts, pts[1:]):
            w = group_weight(a, b)
            best = problem.weighted_min(w)
            assert weighted_value(w, best.point) == weighted_value(w, a)


class TestAdapterDichotomy:
    def test_collinear_interior_points_excluded(self):
        problem = PointListProblem(
            [Point(0, 4), Point(1, 3), Point(2, 2), Point(4, 0), Point(3, 3)]
        )
        ext = dichotomic_search(problem)
        assert ext.points == [Point(0, 4), Point(4, 0)]

    def test_vertices_found(self):
        problem = PointListProblem(
            [Point(0, 10), Point(1, 7), Point(2, 4), Point(4, 1), Point(8, 0), Point(5, 5)]
        )
        ext = dichotomic_search(problem)
        assert ext.points == [Point(0, 10), Point(2, 4), Point(4, 1), Point(8, 0)]
        # (1,7) lies on the (0,10)-(2,4) chord: supported but not a vertex
