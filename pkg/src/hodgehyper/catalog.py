"""Small named hypergraphs and weights with known homology, used by tests and scripts."""

from __future__ import annotations

from itertools import combinations

from .chains import TableWeight
from .hypergraph import Hypergraph, closure, disjoint_union
from .linalg import Q


def three_triangles() -> Hypergraph:
    """Three 2-simplices pairwise sharing one vertex, no lower faces."""
    return Hypergraph.from_edges([["v0", "v1", "v3"], ["v1", "v2", "v4"], ["v3", "v4", "v5"]])


def three_triangles_with_closure() -> Hypergraph:
    """``three_triangles`` next to a disjoint copy of its closure (vertex prefixes a/b)."""
    h = three_triangles()
    return disjoint_union(h, closure(h), tags=["a", "b"])


def _subsets(vertices, sizes) -> list[tuple]:
    return [c for k in sizes for c in combinations(vertices, k)]


def skeleton_pair(n: int) -> Hypergraph:
    """1-skeleton of an n-simplex, disjoint from that 1-skeleton plus the top simplex alone."""
    a = [f"x{i}" for i in range(n + 1)]
    b = [f"y{i}" for i in range(n + 1)]
    return Hypergraph.from_edges(_subsets(a, (1, 2)) + _subsets(b, (1, 2)) + [b])


def triangle_family() -> list[Hypergraph]:
    """Four hypergraphs on v0, v1, v2 sharing the full triangle as closure, adding edges one by one."""
    verts = [["v0"], ["v1"], ["v2"]]
    top = [["v0", "v1", "v2"]]
    edges = [["v0", "v1"], ["v1", "v2"], ["v0", "v2"]]
    return [Hypergraph.from_edges(verts + edges[:k] + top) for k in range(4)]


def hollow_triangle() -> Hypergraph:
    return Hypergraph.from_edges(_subsets(["v0", "v1", "v2"], (1, 2)))


def imbalanced_triangle_weight(scale=2) -> TableWeight:
    """A table on the hollow triangle whose face-ratio product around the cycle is ``scale``."""
    one = Q(1)
    values = {(e, (v,)): one for e in hollow_triangle().simplices(1) for v in e}
    values[(("v0", "v1"), ("v0",))] = Q(scale)
    return TableWeight(values)


def harmonic_mismatch() -> Hypergraph:
    """A hollow triangle plus a lone 2-hyperedge on one of its edges and a new vertex.

    Its degree-1 harmonic class of the closure lies in Sup but meets Inf only in 0.
    """
    return Hypergraph.from_edges(_subsets(["a", "b", "c"], (1, 2)) + [["a", "b", "d"]])


def quasi_spectrum_mismatch() -> Hypergraph:
    """An edge with its vertices plus a triangle over it whose other faces are missing."""
    return Hypergraph.from_edges([["a"], ["b"], ["a", "b"], ["a", "b", "c"]])
