from collections import Counter

import pytest

from bomst.geometry import Point
from bomst.oracle import (
    OracleSizeError,
    classify,
    enumerate_all_trees,
    frontier_of,
    all_tree_points,
    tree_point_arrays,
)
from conftest import gen_instance


class TestEnumeration:
    def test_k3_count_and_points(self, k3):
        trees = enumerate_all_trees(k3)
        assert len(trees) == 3
        assert Counter(p for _, p in trees) == Counter([Point(5, 5), Point(3, 6), Point(6, 3)])

    def test_k4_cayley(self, k4_unit):
        assert len(enumerate_all_trees(k4_unit)) == 16

    def test_k6_cayley(self):
        inst = gen_instance(6, seed=2)
        assert len(enumerate_all_trees(inst)) == 6**4

    def test_trees_are_spanning_and_distinct(self):
        inst = gen_instance(5, seed=3)
        trees = enumerate_all_trees(inst)
        assert len({ids for ids, _ in trees}) == len(trees) == 5**3
        for ids, point in trees:
            assert len(ids) == inst.n - 1
            parent = list(range(inst.n + 1))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for e in ids:
                u, v, _, _ = inst.edges[e]
                ru, rv = find(u), find(v)
                assert ru != rv  # acyclic
                parent[ru] = rv
            assert point == Point(
                sum(inst.edges[e][2] for e in ids), sum(inst.edges[e][3] for e in ids)
            )

    def test_size_guard(self):
        inst = gen_instance(10, seed=1)
        with pytest.raises(OracleSizeError):
            enumerate_all_trees(inst)
        with pytest.raises(OracleSizeError):
            tree_point_arrays(inst)

    @pytest.mark.parametrize("n,seed", [(4, 1), (5, 7), (6, 9)])
    def test_pruefer_path_agrees_with_contraction_deletion(self, n, seed):
        # the two enumerators are independent; their point multisets must match
        inst = gen_instance(n, seed=seed)
        recursive = Counter(p for _, p in enumerate_all_trees(inst))
        vectorized = Counter(all_tree_points(inst))
        assert recursive == vectorized


class TestClassify:
    def test_k3_breakdown(self):
        cls = classify([Point(5, 5), Point(3, 6), Point(6, 3)])
        assert cls.y_n == [Point(3, 6), Point(5, 5), Point(6, 3)]
        assert cls.y_nse == [Point(3, 6), Point(6, 3)]
        assert cls.y_nsn == []
        assert cls.y_nu == [Point(5, 5)]  # 5+5 > 9, strictly inside the hull

    def test_collinear_points_are_nonextreme(self):
        cls = classify([Point(0, 4), Point(1, 3), Point(2, 2), Point(4, 0)])
        assert cls.y_nse == [Point(0, 4), Point(4, 0)]
        assert cls.y_nsn == [Point(1, 3), Point(2, 2)]
        assert cls.y_nu == []

    def test_single_point(self):
        cls = classify([Point(7, 7)])
        assert cls.y_n == cls.y_nse == [Point(7, 7)]

    def test_dominated_points_filtered(self):
        cls = classify([Point(1, 1), Point(2, 2), Point(1, 1)])
        assert cls.y_n == [Point(1, 1)]

    def test_partition_is_disjoint_and_complete(self):
        inst = gen_instance(7, r=30, seed=5)
        cls = frontier_of(inst)
        parts = [set(cls.y_nse), set(cls.y_nsn), set(cls.y_nu)]
        assert set(cls.y_n) == parts[0] | parts[1] | parts[2]
        assert not (parts[0] & parts[1] or parts[0] & parts[2] or parts[1] & parts[2])

    def test_order_independent_and_idempotent(self):
        pts = [Point(5, 5), Point(3, 6), Point(6, 3), Point(9, 9)]
        a = classify(pts)
        b = classify(list(reversed(pts)))
        assert a.y_n == b.y_n and a.y_nse == b.y_nse
        again = classify(a.y_n)
        assert again.y_n == a.y_n

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            classify([])

    def test_frontier_keep_all(self, k3):
        cls = frontier_of(k3, keep_all=True)
        assert Counter(cls.all_points) == Counter([Point(5, 5), Point(3, 6), Point(6, 3)])
        assert frontier_of(k3).all_points is None
