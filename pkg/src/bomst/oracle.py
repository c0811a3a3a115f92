"""Exhaustive ground truth for small instances.

Enumerates every spanning tree of a complete instance, computes the exact
nondominated set, and classifies its points as supported extreme, supported
nonextreme, or unsupported.  Guarded to small vertex counts; this module
exists to validate the solver, not to compete with it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import Point
from .instances import Instance

#: 9^7 ~ 4.8M trees is the practical ceiling for exhaustive enumeration.
MAX_ORACLE_VERTICES = 9


class OracleSizeError(ValueError):
    pass


def _check_size(instance: Instance) -> None:
    if instance.n > MAX_ORACLE_VERTICES:
        raise OracleSizeError(
            f"exhaustive enumeration is guarded to n <= {MAX_ORACLE_VERTICES}, got n = {instance.n}"
        )


def enumerate_all_trees(instance: Instance) -> list[tuple[frozenset[int], Point]]:
    """All spanning trees, each exactly once, as (edge id set, objective point).

    Recursive contraction/deletion: the chosen edge is either forced into the
    tree (contract) or discarded (delete); the delete branch is pruned when it
    would disconnect the remaining graph.
    """
    _check_size(instance)
    n = instance.n
    edges = [(u - 1, v - 1) for u, v, _, _ in instance.edges]
    costs = [(c1, c2) for _, _, c1, c2 in instance.edges]
    out: list[tuple[frozenset[int], Point]] = []

    def find(parent: list[int], x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def connected(parent: list[int], comps: int, avail: list[int]) -> bool:
        p = parent.copy()
        k = comps
        for e in avail:
            ra, rb = find(p, edges[e][0]), find(p, edges[e][1])
            if ra != rb:
                p[ra] = rb
                k -= 1
                if k == 1:
                    return True
        return k == 1

    def rec(avail: list[int], parent: list[int], comps: int, included: list[int]) -> None:
        if comps == 1:
            c1 = sum(costs[e][0] for e in included)
            c2 = sum(costs[e][1] for e in included)
            out.append((frozenset(included), Point(c1, c2)))
            return
        # skip edges made into self-loops by earlier contractions
        pos = 0
        while pos < len(avail):
            a, b = edges[avail[pos]]
            if find(parent, a) != find(parent, b):
                break
            pos += 1
        else:
            return
        e = avail[pos]
        rest = avail[pos + 1 :]
        # contract e
        p2 = parent.copy()
        p2[find(p2, edges[e][0])] = find(p2, edges[e][1])
        included.append(e)
        rec(rest, p2, comps - 1, included)
        included.pop()
        # delete e, but only if the rest still connects everything
        if connected(parent, comps, rest):
            rec(rest, parent, comps, included)

    rec(list(range(len(edges))), list(range(n)), n, [])
    return out


def tree_point_arrays(instance: Instance) -> tuple[np.ndarray, np.ndarray]:
    """Objective points of all n^(n-2) spanning trees as two int64 arrays.

    Fast path for complete graphs: decodes every Pruefer sequence at once with
    vectorized numpy, independent of the contraction/deletion recursion.
    """
    _check_size(instance)
    n = instance.n
    c1m = np.zeros((n, n), dtype=np.int64)
    c2m = np.zeros((n, n), dtype=np.int64)
    for u, v, c1, c2 in instance.edges:
        c1m[u - 1, v - 1] = c1m[v - 1, u - 1] = c1
        c2m[u - 1, v - 1] = c2m[v - 1, u - 1] = c2

    if n == 2:
        return np.array([c1m[0, 1]]), np.array([c2m[0, 1]])

    total = n ** (n - 2)
    seqs = np.array(np.unravel_index(np.arange(total), (n,) * (n - 2))).astype(np.int8).T
    rows = np.arange(total)
    degree = np.ones((total, n), dtype=np.int8)
    for col in range(n - 2):
        np.add.at(degree, (rows, seqs[:, col]), 1)

    vertex_ids = np.arange(n, dtype=np.int16)
    z1 = np.zeros(total, dtype=np.int64)
    z2 = np.zeros(total, dtype=np.int64)
    for col in range(n - 2):
        leaf = np.where(degree == 1, vertex_ids, n).min(axis=1)
        other = seqs[:, col].astype(np.int64)
        z1 += c1m[leaf, other]
        z2 += c2m[leaf, other]
        degree[rows, leaf] -= 1
        degree[rows, other] -= 1
    a = np.where(degree == 1, vertex_ids, n).min(axis=1)
    b = np.where(degree == 1, vertex_ids, -1).max(axis=1)
    z1 += c1m[a, b]
    z2 += c2m[a, b]
    return z1, z2


def all_tree_points(instance: Instance) -> list[Point]:
    z1, z2 = tree_point_arrays(instance)
    return [Point(int(a), int(b)) for a, b in zip(z1.tolist(), z2.tolist())]


def _nondominated(z1: np.ndarray, z2: np.ndarray) -> list[Point]:
    order = np.lexsort((z2, z1))
    s1, s2 = z1[order], z2[order]
    first = np.empty(len(s1), dtype=bool)
    first[0] = True
    first[1:] = s1[1:] != s1[:-1]
    run_min = np.minimum.accumulate(s2)
    keep = first.copy()
    starts = np.flatnonzero(first)[1:]
    keep[starts] &= s2[starts] < run_min[starts - 1]
    return [Point(int(a), int(b)) for a, b in zip(s1[keep].tolist(), s2[keep].tolist())]


def _hull_vertices(frontier: list[Point]) -> list[Point]:
    """Vertices of the lower-left convex hull of a nondominated frontier.

    Input must be sorted by z1 ascending (hence z2 descending); monotone-chain
    with an exact integer turn test, popping collinear middle points.
    """
    hull: list[Point] = []
    for p in frontier:
        while len(hull) >= 2:
            o, m = hull[-2], hull[-1]
            cross = (m.z1 - o.z1) * (p.z2 - m.z2) - (m.z2 - o.z2) * (p.z1 - m.z1)
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


@dataclass
class FrontierClassification:
    """Full ground-truth frontier breakdown for one instance."""

    all_points: list[Point] | None  # multiset over all trees (None if not kept)
    y_n: list[Point]  # nondominated set, sorted by z1
    y_nse: list[Point]  # supported extreme (hull vertices)
    y_nsn: list[Point]  # supported nonextreme (on hull edges)
    y_nu: list[Point]  # unsupported (strictly inside)


def classify(points: list[Point], *, keep_all: bool = True) -> FrontierClassification:
    """Split a point multiset into nondominated / extreme / nonextreme / unsupported."""
    if not points:
        raise ValueError("cannot classify an empty point set")
    z1 = np.fromiter((p.z1 for p in points), dtype=np.int64, count=len(points))
    z2 = np.fromiter((p.z2 for p in points), dtype=np.int64, count=len(points))
    return _classify_arrays(z1, z2, list(points) if keep_all else None)


def _classify_arrays(z1: np.ndarray, z2: np.ndarray, all_points: list[Point] | None) -> FrontierClassification:
    y_n = _nondominated(z1, z2)
    y_nse = _hull_vertices(y_n)
    vertex_set = set(y_nse)
    y_nsn: list[Point] = []
    y_nu: list[Point] = []
    for p in y_n:
        if p in vertex_set:
            continue
        # locate the hull segment whose z1-range covers p
        seg = next(k for k in range(len(y_nse) - 1) if y_nse[k].z1 < p.z1 < y_nse[k + 1].z1)
        a, b = y_nse[seg], y_nse[seg + 1]
        cross = (b.z1 - a.z1) * (p.z2 - a.z2) - (b.z2 - a.z2) * (p.z1 - a.z1)
        (y_nsn if cross == 0 else y_nu).append(p)
    return FrontierClassification(all_points, y_n, y_nse, y_nsn, y_nu)


def frontier_of(instance: Instance, *, keep_all: bool = False) -> FrontierClassification:
    """Ground-truth classification of a complete instance's objective space."""
    z1, z2 = tree_point_arrays(instance)
    kept = [Point(int(a), int(b)) for a, b in zip(z1.tolist(), z2.tolist())] if keep_all else None
    return _classify_arrays(z1, z2, kept)
