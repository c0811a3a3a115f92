"""Resumable enumeration of solutions in non-decreasing weighted-sum order.

Spanning trees are ranked by branch-and-partition: each frontier node carries
a constrained subproblem (forced-in edges, forced-out edges) together with its
optimal tree and exact weighted value.  Popping a node emits its tree and
splits the remaining solution set by the classic in/out partition over the
tree's free edges; each child's constrained optimum is the parent tree with a
single best-swap exchange, found by scanning edges in weighted-cost order
against the cut opened by removing one tree edge.  This yields every spanning
tree exactly once, in non-decreasing weighted value, with work per emission
bounded by the partition step.

A point-list adapter provides the same session interface over an explicit
finite set of objective points, for fixtures and strategy-level tests.

The swap scan is jitted with numba when available; the pure-Python fallback
is identical but slow, suitable only for small inputs.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .geometry import Point, Weight
from .instances import Instance

try:  # pragma: no cover - exercised implicitly by every session
    from numba import njit
except ImportError:  # pragma: no cover

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


class TreeSolution:
    """A spanning tree emitted by ranking: edge ids plus its objective point."""

    __slots__ = ("point", "_edge_arr")

    def __init__(self, point: Point, edge_arr: np.ndarray):
        self.point = point
        self._edge_arr = edge_arr

    @property
    def edge_ids(self) -> frozenset[int]:
        return frozenset(self._edge_arr.tolist())

    def __repr__(self):
        return f"TreeSolution(point={self.point}, edges={sorted(self._edge_arr.tolist())})"


@dataclass(frozen=True)
class IndexedPoint:
    """A point-list solution: its position in the list plus the point itself."""

    index: int
    point: Point


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


@njit(cache=True)
def _best_swaps(tree, n_in, out_ids, n, edge_u, edge_v, wcost, order):  # pragma: no cover - jitted
    """Best replacement edge for each free tree edge of a partition node.

    For free edge at tree position k, the child subproblem forces it out; its
    optimum is the parent tree with the cheapest non-excluded edge across the
    cut opened by the removal.  Returns (replacement edge id or -1, weighted
    value delta) per free edge.  ``order`` lists edge ids by ascending
    (weighted cost, id) so the first crossing hit is the deterministic best.
    """
    nt = tree.shape[0]
    n_edges = edge_u.shape[0]

    deg = np.zeros(n, np.int32)
    for k in range(nt):
        e = tree[k]
        deg[edge_u[e]] += 1
        deg[edge_v[e]] += 1
    start = np.zeros(n + 1, np.int32)
    for v in range(n):
        start[v + 1] = start[v] + deg[v]
    fill = start[:n].copy()
    nb_vert = np.empty(2 * nt, np.int32)
    nb_pos = np.empty(2 * nt, np.int32)
    for k in range(nt):
        e = tree[k]
        a = edge_u[e]
        b = edge_v[e]
        nb_vert[fill[a]] = b
        nb_pos[fill[a]] = k
        fill[a] += 1
        nb_vert[fill[b]] = a
        nb_pos[fill[b]] = k
        fill[b] += 1

    parent_vertex = np.full(n, -1, np.int32)
    parent_pos = np.full(n, -1, np.int32)
    visited = np.zeros(n, np.uint8)
    bfs = np.empty(n, np.int32)
    bfs[0] = 0
    visited[0] = 1
    head = 0
    tail = 1
    while head < tail:
        x = bfs[head]
        head += 1
        for idx in range(start[x], start[x + 1]):
            y = nb_vert[idx]
            if visited[y] == 0:
                visited[y] = 1
                parent_vertex[y] = x
                parent_pos[y] = nb_pos[idx]
                bfs[tail] = y
                tail += 1

    # nested preorder intervals: x lies under c iff tin[c] <= tin[x] < tin[c] + size[c]
    size = np.ones(n, np.int32)
    for i in range(n - 1, 0, -1):
        size[parent_vertex[bfs[i]]] += size[bfs[i]]
    tin = np.zeros(n, np.int32)
    nxt = np.zeros(n, np.int32)
    nxt[0] = 1
    for i in range(1, n):
        v = bfs[i]
        p = parent_vertex[v]
        tin[v] = nxt[p]
        nxt[p] = tin[v] + size[v]
        nxt[v] = tin[v] + 1

    excl = np.zeros(n_edges, np.uint8)
    for i in range(out_ids.shape[0]):
        excl[out_ids[i]] = 1

    p_free = nt - n_in
    repl = np.full(p_free, -1, np.int32)
    delta = np.zeros(p_free, np.int64)
    for k in range(n_in, nt):
        f = tree[k]
        a = edge_u[f]
        b = edge_v[f]
        c = b if parent_pos[b] == k else a
        lo = tin[c]
        hi = lo + size[c]
        for j in range(n_edges):
            e = order[j]
            if e == f or excl[e] == 1:
                continue
            tu = tin[edge_u[e]]
            tv = tin[edge_v[e]]
            inu = lo <= tu and tu < hi
            inv = lo <= tv and tv < hi
            if inu != inv:
                repl[k - n_in] = e
                delta[k - n_in] = wcost[e] - wcost[f]
                break
    return repl, delta


class _Node:
    __slots__ = ("tree", "n_in", "out", "value")

    def __init__(self, tree: np.ndarray, n_in: int, out: tuple, value: int):
        self.tree = tree  # edge ids; positions [0, n_in) are forced in
        self.n_in = n_in
        self.out = out
        self.value = value


class SpanningTreeProblem:
    """Instance wrapper exposing weighted optimization and ranking sessions."""

    def __init__(self, instance: Instance):
        self.instance = instance
        self.n = instance.n
        edges = instance.edges
        self.edge_u = np.fromiter((u - 1 for u, _, _, _ in edges), dtype=np.int32, count=len(edges))
        self.edge_v = np.fromiter((v - 1 for _, v, _, _ in edges), dtype=np.int32, count=len(edges))
        self.c1 = np.fromiter((c1 for _, _, c1, _ in edges), dtype=np.int64, count=len(edges))
        self.c2 = np.fromiter((c2 for _, _, _, c2 in edges), dtype=np.int64, count=len(edges))

    def point_of(self, edge_arr: np.ndarray) -> Point:
        return Point(int(self.c1[edge_arr].sum()), int(self.c2[edge_arr].sum()))

    def _kruskal(self, keys: list[tuple]) -> np.ndarray:
        order = sorted(range(len(keys)), key=keys.__getitem__)
        uf = _UnionFind(self.n)
        picked = np.empty(self.n - 1, dtype=np.int32)
        got = 0
        for e in order:
            if uf.union(int(self.edge_u[e]), int(self.edge_v[e])):
                picked[got] = e
                got += 1
                if got == self.n - 1:
                    break
        if got != self.n - 1:
            raise ValueError("instance is not connected")
        return picked

    def weighted_min(self, w: Weight, tiebreak: str | None = None) -> TreeSolution:
        """Spanning tree minimizing the weighted sum, with optional exact
        lexicographic tie-breaking on f1 or f2 (two-component integer keys,
        no perturbation)."""
        wc = (w.w1 * self.c1 + w.w2 * self.c2).tolist()
        c1 = self.c1.tolist()
        c2 = self.c2.tolist()
        if tiebreak == "f1":
            keys = [(wc[e], c1[e], c2[e]) for e in range(len(wc))]
        elif tiebreak == "f2":
            keys = [(wc[e], c2[e], c1[e]) for e in range(len(wc))]
        elif tiebreak is None:
            keys = [(wc[e],) for e in range(len(wc))]
        else:
            raise ValueError(f"unknown tiebreak {tiebreak!r}")
        arr = self._kruskal(keys)
        return TreeSolution(self.point_of(arr), arr)

    def open_session(self, w: Weight) -> "TreeRankingSession":
        return TreeRankingSession(self, w)


class TreeRankingSession:
    """Emits the instance's spanning trees in non-decreasing weighted value.

    Ties are broken by frontier insertion order, so runs are deterministic.
    ``set_prune_bound`` lets the caller drop subproblems that can never be
    emitted (their values exceed a known stop threshold); the smallest dropped
    value is tracked so the caller can still bound the next unseen value.
    """

    def __init__(self, problem: SpanningTreeProblem, w: Weight):
        self.problem = problem
        self.w = w
        # session arithmetic runs on int64; reject inputs that could wrap
        worst = (problem.n - 1) * (w.w1 * int(problem.c1.max()) + w.w2 * int(problem.c2.max()))
        if worst >= 2**62:
            raise OverflowError(f"weighted tree values up to {worst} exceed the supported range")
        self.wcost = w.w1 * problem.c1 + w.w2 * problem.c2
        ids = np.arange(len(self.wcost))
        self.order = np.lexsort((ids, self.wcost)).astype(np.int32)
        self.emitted_count = 0
        self.last_value: int | None = None
        self.prune_bound: int | None = None
        self.min_pruned_value: int | None = None
        self._seq = 0
        root_tree = problem._kruskal([(int(v), e) for e, v in enumerate(self.wcost.tolist())])
        root_value = int(self.wcost[root_tree].sum())
        root = _Node(root_tree, 0, (), root_value)
        # heap entries: (value, seq, parent node, free position, replacement edge);
        # free position -1 marks an already materialized node
        self._heap: list = [(root_value, 0, root, -1, -1)]

    def set_prune_bound(self, bound: int) -> None:
        if self.prune_bound is None or bound < self.prune_bound:
            self.prune_bound = bound

    def peek_value(self) -> int | None:
        return self._heap[0][0] if self._heap else None

    def next(self) -> TreeSolution | None:
        if not self._heap:
            return None
        value, _, parent, k, repl = heapq.heappop(self._heap)
        node = parent if k < 0 else self._materialize(parent, k, repl, value)
        self._expand(node)
        self.emitted_count += 1
        self.last_value = value
        return TreeSolution(self.problem.point_of(node.tree), node.tree)

    def _materialize(self, parent: _Node, k: int, repl: int, value: int) -> _Node:
        nt = parent.tree.shape[0]
        tree = np.empty(nt, dtype=np.int32)
        tree[:k] = parent.tree[:k]
        tree[k : nt - 1] = parent.tree[k + 1 :]
        tree[nt - 1] = repl
        return _Node(tree, k, parent.out + (int(parent.tree[k]),), value)

    def _expand(self, node: _Node) -> None:
        out_arr = np.array(node.out, dtype=np.int32) if node.out else np.empty(0, dtype=np.int32)
        repl, delta = _best_swaps(
            node.tree, node.n_in, out_arr, self.problem.n,
            self.problem.edge_u, self.problem.edge_v, self.wcost, self.order,
        )
        bound = self.prune_bound
        for i in range(repl.shape[0]):
            e = int(repl[i])
            if e < 0:
                continue
            child_value = node.value + int(delta[i])
            if bound is not None and child_value > bound:
                if self.min_pruned_value is None or child_value < self.min_pruned_value:
                    self.min_pruned_value = child_value
                continue
            self._seq += 1
            heapq.heappush(self._heap, (child_value, self._seq, node, node.n_in + i, e))


class PointListProblem:
    """Explicit finite solution set: each list entry is one feasible point.

    Duplicates are legitimate distinct solutions and are emitted separately.
    """

    def __init__(self, points: list[Point]):
        if not points:
            raise ValueError("point list must be non-empty")
        self.points = [Point(*p) for p in points]

    def weighted_min(self, w: Weight, tiebreak: str | None = None) -> IndexedPoint:
        if tiebreak == "f1":
            key = lambda i: (w.value(self.points[i]), self.points[i].z1, self.points[i].z2, i)
        elif tiebreak == "f2":
            key = lambda i: (w.value(self.points[i]), self.points[i].z2, self.points[i].z1, i)
        elif tiebreak is None:
            key = lambda i: (w.value(self.points[i]), i)
        else:
            raise ValueError(f"unknown tiebreak {tiebreak!r}")
        best = min(range(len(self.points)), key=key)
        return IndexedPoint(best, self.points[best])

    def open_session(self, w: Weight) -> "PointListSession":
        return PointListSession(self, w)


class PointListSession:
    """Ranking session over an explicit point list (value, then index order)."""

    def __init__(self, problem: PointListProblem, w: Weight):
        self.problem = problem
        self.w = w
        values = [w.value(p) for p in problem.points]
        self._order = sorted(range(len(values)), key=lambda i: (values[i], i))
        self._values = values
        self._cursor = 0
        self.emitted_count = 0
        self.last_value: int | None = None
        self.min_pruned_value: int | None = None

    def set_prune_bound(self, bound: int) -> None:  # finite list: nothing to prune
        pass

    def peek_value(self) -> int | None:
        if self._cursor >= len(self._order):
            return None
        return self._values[self._order[self._cursor]]

    def next(self) -> IndexedPoint | None:
        if self._cursor >= len(self._order):
            return None
        idx = self._order[self._cursor]
        self._cursor += 1
        self.emitted_count += 1
        self.last_value = self._values[idx]
        return IndexedPoint(idx, self.problem.points[idx])


def min_weighted_tree(instance: Instance, w: Weight, tiebreak: str | None = None) -> TreeSolution:
    """Convenience wrapper for a one-off weighted MST solve."""
    return SpanningTreeProblem(instance).weighted_min(w, tiebreak)
