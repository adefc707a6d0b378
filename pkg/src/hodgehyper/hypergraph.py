"""Hypergraphs, their simplicial closure, and the digraph constructions.

A simplex or hyperedge is a tuple of vertex labels sorted by :func:`vertex_key`.
Labels may be ints or strings; strings compare in natural order so that
``v2 < v10``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Iterator

import numpy as np

Vertex = Hashable
Simplex = tuple


class HypergraphError(ValueError):
    pass


class CyclicDigraph(HypergraphError):
    """Raised when a digraph has a closed path; ``cycle`` lists it, first vertex repeated last."""

    def __init__(self, cycle: list):
        self.cycle = cycle
        super().__init__("digraph has a closed path: " + " -> ".join(map(str, cycle)))


_chunk = re.compile(r"(\d+)")


def vertex_key(v: Vertex) -> tuple:
    if isinstance(v, (int, np.integer)):
        return (0, int(v))
    parts = _chunk.split(str(v))
    return (1, tuple((0, int(p), "") if p.isdigit() else (1, 0, p) for p in parts if p))


def simplex(vertices: Iterable[Vertex]) -> Simplex:
    s = tuple(sorted(set(vertices), key=vertex_key))
    if not s:
        raise HypergraphError("hyperedges must be nonempty")
    return s


def simplex_key(s: Simplex) -> tuple:
    return (len(s), tuple(vertex_key(v) for v in s))


def faces(s: Simplex) -> list[Simplex]:
    """Codimension-one faces d_0 s, ..., d_n s (d_i drops the i-th vertex)."""
    if len(s) == 1:
        return []
    return [s[:i] + s[i + 1:] for i in range(len(s))]


def format_simplex(s: Simplex) -> str:
    return ",".join(map(str, s))


def parse_simplex(text: str) -> Simplex:
    labels = [t for t in re.split(r"[,\s{}]+", text) if t]
    return simplex(labels)


@dataclass(frozen=True)
class Hypergraph:
    """A finite set of nonempty hyperedges.

    ``vertex_set`` defaults to the union of the hyperedges. It can be larger
    (the complement keeps the closure's vertices), in which case ``is_valid``
    reports that some vertex is not covered.
    """

    edges: frozenset
    vertex_set: frozenset = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        covered = frozenset(v for e in self.edges for v in e)
        if self.vertex_set is None:
            object.__setattr__(self, "vertex_set", covered)
        elif not covered <= self.vertex_set:
            raise HypergraphError("hyperedge uses a vertex outside vertex_set")

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[Vertex]], vertex_set=None) -> "Hypergraph":
        return cls(frozenset(simplex(e) for e in edges),
                   None if vertex_set is None else frozenset(vertex_set))

    @property
    def vertices(self) -> list:
        return sorted(self.vertex_set, key=vertex_key)

    @property
    def is_valid(self) -> bool:
        return self.vertex_set == frozenset(v for e in self.edges for v in e)

    @property
    def max_dim(self) -> int:
        return max((len(e) - 1 for e in self.edges), default=-1)

    def simplices(self, n: int) -> list[Simplex]:
        """Hyperedges of dimension ``n`` in canonical order."""
        return sorted((e for e in self.edges if len(e) == n + 1), key=simplex_key)

    def sorted_edges(self) -> list[Simplex]:
        return sorted(self.edges, key=simplex_key)

    def is_simplicial(self) -> bool:
        return all(f in self.edges for e in self.edges for f in faces(e))

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.sorted_edges())

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, s) -> bool:
        return simplex(s) in self.edges

    def __repr__(self) -> str:
        return "Hypergraph({" + ", ".join("{" + format_simplex(e) + "}" for e in self) + "})"


def closure(h: Hypergraph) -> Hypergraph:
    """The smallest simplicial complex containing every hyperedge of ``h``."""
    out = set()
    for e in h.edges:
        if e in out:
            continue
        for k in range(1, len(e) + 1):
            out.update(combinations(e, k))
    return Hypergraph(frozenset(out), h.vertex_set)


def complement(h: Hypergraph) -> Hypergraph:
    """``closure(h) \\ h``; keeps the closure's vertex set, so it may be invalid."""
    c = closure(h)
    return Hypergraph(c.edges - h.edges, c.vertex_set)


def relabel(h: Hypergraph, mapping) -> Hypergraph:
    return Hypergraph.from_edges(([mapping(v) for v in e] for e in h.edges),
                                 [mapping(v) for v in h.vertex_set])


def disjoint_union(*parts: Hypergraph, tags: Iterable[str] | None = None) -> Hypergraph:
    """Union after prefixing each part's labels with its tag (default p0_, p1_, ...)."""
    tags = list(tags) if tags is not None else [f"p{i}_" for i in range(len(parts))]
    edges: list = []
    verts: list = []
    for tag, h in zip(tags, parts):
        r = relabel(h, lambda v, t=tag: f"{t}{v}")
        edges.extend(r.edges)
        verts.extend(r.vertex_set)
    return Hypergraph.from_edges(edges, verts)


# ---------------------------------------------------------------- text format

def parse_hypergraph(text: str) -> Hypergraph:
    edges = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            edges.append(line.split())
    return Hypergraph.from_edges(edges)


def format_hypergraph(h: Hypergraph) -> str:
    return "".join(" ".join(map(str, e)) + "\n" for e in h)


def read_hypergraph(path: str) -> Hypergraph:
    with open(path) as f:
        return parse_hypergraph(f.read())


def random_hypergraph(num_vertices: int, max_dim: int, p: float, seed: int) -> Hypergraph:
    """Each nonempty subset of at most ``max_dim + 1`` vertices is kept with probability p.

    Vertices are labelled v0, v1, ...; an empty draw falls back to {v0}.
    """
    rng = np.random.default_rng(seed)
    labels = [f"v{i}" for i in range(num_vertices)]
    edges = []
    for k in range(1, min(max_dim + 1, num_vertices) + 1):
        for s in combinations(labels, k):
            if rng.random() < p:
                edges.append(s)
    if not edges:
        edges.append((labels[0],))
    return Hypergraph.from_edges(edges)


# ------------------------------------------------------------------- digraphs

@dataclass(frozen=True)
class Digraph:
    vertices: frozenset
    edges: frozenset
    weights: dict | None = field(default=None, compare=False, hash=False)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], vertices: Iterable = (), weights: dict | None = None) -> "Digraph":
        edges = frozenset((a, b) for a, b in edges)
        verts = frozenset(vertices) | {v for e in edges for v in e}
        return cls(verts, edges, weights)

    def successors(self) -> dict:
        out: dict = {v: [] for v in self.vertices}
        for a, b in self.edges:
            out[a].append(b)
        for v in out:
            out[v].sort(key=_any_key)
        return out


def _any_key(v) -> tuple:
    return simplex_key(v) if isinstance(v, tuple) else vertex_key(v)


def find_cycle(g: Digraph) -> list | None:
    """A closed directed path as [v0, ..., vk, v0], or None if ``g`` is acyclic."""
    succ = g.successors()
    state: dict = {}
    for root in sorted(g.vertices, key=_any_key):
        if root in state:
            continue
        stack = [(root, iter(succ[root]))]
        path = [root]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[v] = 2
                stack.pop()
                path.pop()
            elif state.get(nxt) == 1:
                return path[path.index(nxt):] + [nxt]
            elif nxt not in state:
                state[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
                path.append(nxt)
    return None


def allowed_paths(g: Digraph, max_len: int) -> list[tuple]:
    """All directed paths with at most ``max_len`` arrows, as vertex sequences."""
    succ = g.successors()
    out = []
    frontier = [(v,) for v in sorted(g.vertices, key=_any_key)]
    for _ in range(max_len + 1):
        out.extend(frontier)
        frontier = [p + (w,) for p in frontier for w in succ[p[-1]] if w not in p]
    return out


def digraph_to_hypergraph(g: Digraph, max_len: int) -> Hypergraph:
    """Vertex sets of the allowed paths of an acyclic digraph."""
    cycle = find_cycle(g)
    if cycle is not None:
        raise CyclicDigraph(cycle)
    return Hypergraph.from_edges(allowed_paths(g, max_len))


def face_digraph(h: Hypergraph) -> tuple[Digraph, frozenset]:
    """The digraph sigma -> d_i sigma on the closure, and the hyperedges of ``h``."""
    c = closure(h)
    edges = [(s, f) for s in c.edges for f in faces(s)]
    return Digraph.from_edges(edges, c.edges), frozenset(h.edges)


def inclusion_digraph(h: Hypergraph) -> Digraph:
    """sigma -> tau for hyperedges with tau strictly inside sigma, weighted by dim difference."""
    weights = {}
    for s in h.edges:
        ss = set(s)
        for t in h.edges:
            if len(t) < len(s) and ss.issuperset(t):
                weights[(s, t)] = len(s) - len(t)
    return Digraph.from_edges(weights, h.edges, weights)


def parse_digraph(text: str) -> Digraph:
    """``a -> b`` per line, optionally ``a -> b : weight``; a bare label adds a vertex."""
    edges, verts, weights = [], [], {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            verts.extend(line.split())
            continue
        arrow, _, w = line.partition(":")
        a, b = (t.strip() for t in arrow.split("->", 1))
        if not a or not b or len(a.split()) > 1 or len(b.split()) > 1:
            raise HypergraphError(f"bad digraph line: {line!r}")
        edges.append((a, b))
        if w.strip():
            weights[(a, b)] = int(w)
    return Digraph.from_edges(edges, verts, weights or None)


def format_digraph(g: Digraph) -> str:
    lines = []
    touched = {v for e in g.edges for v in e}
    for v in sorted(g.vertices - touched, key=_any_key):
        lines.append(str(v))
    for a, b in sorted(g.edges, key=lambda e: (_any_key(e[0]), _any_key(e[1]))):
        suffix = f" : {g.weights[(a, b)]}" if g.weights and (a, b) in g.weights else ""
        lines.append(f"{a} -> {b}{suffix}")
    return "".join(line + "\n" for line in lines)
