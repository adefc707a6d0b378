"""Weights, weighted boundary operators, and the Inf/Sup chain levels."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

import numpy as np

from . import linalg as la
from .hypergraph import (Hypergraph, Simplex, closure, faces, format_simplex,
                         parse_simplex, simplex, simplex_key)
from .linalg import Q, Subspace


class InvalidWeight(ValueError):
    pass


class MissingPair(InvalidWeight):
    pass


class NotInvariant(ValueError):
    pass


# -------------------------------------------------------------------- weights

@dataclass(frozen=True)
class TrivialWeight:
    kind = "trivial"

    def value(self, s: Simplex, f: Simplex) -> la.Rational:
        return Q(1)


@dataclass(frozen=True)
class ZeroWeight:
    kind = "zero"

    def value(self, s: Simplex, f: Simplex) -> la.Rational:
        return Q(0)


@dataclass(frozen=True)
class EvaluationWeight:
    """phi(s, f) = C * w(s) / w(f) for a positive evaluation w on simplices."""

    values: dict
    C: la.Rational = field(default_factory=lambda: Q(1))
    kind = "evaluation"

    def __post_init__(self):
        if self.C <= 0 or any(v <= 0 for v in self.values.values()):
            raise InvalidWeight("evaluation weights need positive values and positive C")

    def w(self, s: Simplex) -> la.Rational:
        try:
            return self.values[s]
        except KeyError:
            raise MissingPair(f"no evaluation value for simplex {format_simplex(s)}") from None

    def value(self, s: Simplex, f: Simplex) -> la.Rational:
        return self.C * self.w(s) / self.w(f)


@dataclass(frozen=True)
class TableWeight:
    """Explicit phi(s, d_i s) values keyed by (s, face) pairs."""

    values: dict
    kind = "table"

    def value(self, s: Simplex, f: Simplex) -> la.Rational:
        try:
            return self.values[(s, f)]
        except KeyError:
            raise MissingPair(f"no table entry for {format_simplex(s)}|{format_simplex(f)}") from None


Weight = Union[TrivialWeight, ZeroWeight, EvaluationWeight, TableWeight]


def random_evaluation_weight(k: Hypergraph, rng: np.random.Generator, C=None) -> EvaluationWeight:
    """Positive rational values p/q with 1 <= p, q <= 9 on every simplex of ``k``'s closure."""
    values = {s: Q(f"{int(rng.integers(1, 10))}/{int(rng.integers(1, 10))}")
              for s in closure(k).sorted_edges()}
    if C is None:
        C = f"{int(rng.integers(1, 5))}/{int(rng.integers(1, 5))}"
    return EvaluationWeight(values, Q(C))


def weight_violation(k: Hypergraph, phi: Weight) -> tuple | None:
    """First (sigma, i, j) with j < i breaking the compatibility identity, or None."""
    k = closure(k)
    for s in k.sorted_edges():
        fs = faces(s)
        for f in fs:
            phi.value(s, f)  # surfaces MissingPair early
        if isinstance(phi, (TrivialWeight, ZeroWeight, EvaluationWeight)) or len(s) < 3:
            continue
        for i in range(len(s)):
            di = fs[i]
            for j in range(i):
                dj = fs[j]
                djdi = di[:j] + di[j + 1:]
                if phi.value(di, djdi) * phi.value(s, di) != phi.value(dj, djdi) * phi.value(s, dj):
                    return s, i, j
    return None


def validate_weight(k: Hypergraph, phi: Weight) -> bool:
    return weight_violation(k, phi) is None


def parse_weight(data: str | dict) -> Weight:
    if isinstance(data, str):
        data = json.loads(data)
    kind = data.get("kind")
    if kind == "trivial":
        return TrivialWeight()
    if kind == "zero":
        return ZeroWeight()
    values = data.get("values", {})
    if kind == "evaluation":
        parsed = {}
        for key, v in values.items():
            try:
                parsed[parse_simplex(key)] = Q(str(v))
            except ValueError as exc:
                raise InvalidWeight(f"bad evaluation entry {key!r}: {exc}") from None
        return EvaluationWeight(parsed, Q(str(data.get("C", "1"))))
    if kind == "table":
        parsed = {}
        for key, v in values.items():
            try:
                a, b = key.split("|")
                s, f = parse_simplex(a), parse_simplex(b)
                parsed[(s, f)] = Q(str(v))
            except ValueError as exc:
                raise InvalidWeight(f"bad table entry {key!r}: {exc}") from None
            if len(f) != len(s) - 1 or not set(f) <= set(s):
                raise InvalidWeight(f"bad table entry {key!r}: not a codimension-1 face")
        return TableWeight(parsed)
    raise InvalidWeight(f"unknown weight kind {kind!r}")


def weight_to_json(phi: Weight) -> dict:
    out: dict = {"kind": phi.kind}
    if isinstance(phi, EvaluationWeight):
        out["C"] = str(phi.C)
        out["values"] = {format_simplex(s): str(v)
                         for s, v in sorted(phi.values.items(), key=lambda kv: simplex_key(kv[0]))}
    elif isinstance(phi, TableWeight):
        items = sorted(phi.values.items(), key=lambda kv: (simplex_key(kv[0][0]), simplex_key(kv[0][1])))
        out["values"] = {f"{format_simplex(s)}|{format_simplex(f)}": str(v) for (s, f), v in items}
    return out


# ------------------------------------------------------------ chain operators

@dataclass(frozen=True, eq=False)
class ChainBasis:
    """The n-simplices of a complex in canonical order; coordinates of F(K)_n."""

    n: int
    simplices: tuple

    @cached_property
    def index(self) -> dict:
        return {s: i for i, s in enumerate(self.simplices)}

    @property
    def dim(self) -> int:
        return len(self.simplices)


Endpoint = Union[ChainBasis, Subspace]


def _endpoint_dim(e: Endpoint) -> int:
    return e.dim


def _gram(e: Endpoint) -> np.ndarray | None:
    if isinstance(e, ChainBasis):
        return None
    return la.matmul(e.basis.T, e.basis)


@dataclass(frozen=True, eq=False)
class LinearOperator:
    """A matrix between coordinate spaces, either a chain basis or a subspace basis."""

    matrix: np.ndarray
    domain: Endpoint
    codomain: Endpoint

    def __post_init__(self):
        if self.matrix.shape != (_endpoint_dim(self.codomain), _endpoint_dim(self.domain)):
            raise la.AmbientMismatch(f"matrix shape {self.matrix.shape} does not fit its endpoints")

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(la.matmul(self.matrix, other.matrix), other.domain, self.codomain)


def adjoint(op: LinearOperator) -> LinearOperator:
    """Adjoint for the inner products induced from the ambient chain spaces.

    With Gram matrices G of the endpoint bases this is G_dom^-1 M^T G_cod.
    """
    m = op.matrix.T
    g_cod = _gram(op.codomain)
    g_dom = _gram(op.domain)
    if g_cod is not None:
        m = la.matmul(m, g_cod)
    if g_dom is not None:
        m = la.matmul(la.inverse(g_dom), m) if g_dom.size else m
    return LinearOperator(m, op.codomain, op.domain)


def restrict(op: LinearOperator, dom: Subspace, cod: Subspace) -> LinearOperator:
    """``op`` (between chain bases) restricted to dom -> cod, in their bases."""
    img = la.matmul(op.matrix, dom.basis)
    try:
        coords = la.solve_in_basis(cod.basis, img)
    except la.NotASubspace:
        raise NotInvariant("operator does not map the domain subspace into the codomain") from None
    return LinearOperator(coords, dom, cod)


def restricted_adjoint(op: LinearOperator, dom: Subspace, cod: Subspace) -> LinearOperator:
    return adjoint(restrict(op, dom, cod))


def in_ambient(op: LinearOperator) -> np.ndarray:
    """Matrix of a subspace-restricted operator in ambient coordinates, zero off the domain."""
    m = op.matrix
    if isinstance(op.codomain, Subspace):
        m = la.matmul(op.codomain.basis, m)
    if isinstance(op.domain, Subspace):
        b = op.domain.basis
        if b.shape[1]:
            left = la.inverse(la.matmul(b.T, b))
            m = la.matmul(m, la.matmul(left, b.T))
        else:
            m = la.zeros(m.shape[0], b.shape[0], la.is_exact(b))
    return m


# -------------------------------------------------------------- chain levels

@dataclass(frozen=True, eq=False)
class ChainLevelData:
    n: int
    inf: Subspace
    sup: Subspace
    edge_span: Subspace
    a_comp: Subspace
    b_comp: Subspace
    e_comp: Subspace

    @property
    def ambient_dim(self) -> int:
        return self.edge_span.ambient_dim


class WeightedHypergraph:
    """A hypergraph with a weight, caching per-degree bases, boundaries and levels.

    ``exact=False`` runs everything in float64.
    """

    def __init__(self, h: Hypergraph, phi: Weight | None = None, exact: bool = True):
        self.h = h
        self.phi = phi if phi is not None else TrivialWeight()
        self.exact = exact
        self.complex = closure(h)
        self._boundary: dict[int, LinearOperator] = {}
        self._level: dict[int, ChainLevelData] = {}
        self._basis: dict[int, ChainBasis] = {}
        self.cache: dict = {}

    @property
    def top_dim(self) -> int:
        return self.complex.max_dim

    def basis(self, n: int) -> ChainBasis:
        if n not in self._basis:
            simplices = tuple(self.complex.simplices(n)) if n >= 0 else ()
            self._basis[n] = ChainBasis(n, simplices)
        return self._basis[n]

    def boundary(self, n: int) -> LinearOperator:
        """The weighted boundary F(K)_n -> F(K)_{n-1}; zero at n <= 0."""
        if n not in self._boundary:
            dom, cod = self.basis(n), self.basis(n - 1)
            m = la.zeros(cod.dim, dom.dim)
            if n >= 1:
                for c, s in enumerate(dom.simplices):
                    for i, f in enumerate(faces(s)):
                        v = self.phi.value(s, f)
                        m[cod.index[f], c] = v if i % 2 == 0 else -v
            self._boundary[n] = LinearOperator(la.like(m, self.exact), dom, cod)
        return self._boundary[n]

    def ambient(self, n: int) -> Subspace:
        return Subspace.full(self.basis(n).dim, self.exact)

    def edge_span(self, n: int) -> Subspace:
        b = self.basis(n)
        return Subspace.coordinate(b.dim, [b.index[s] for s in self.h.simplices(n)] if n >= 0 else [],
                                   self.exact)

    def level(self, n: int) -> ChainLevelData:
        if n not in self._level:
            d_n = self.boundary(n).matrix
            d_up = self.boundary(n + 1).matrix
            fh = self.edge_span(n)
            inf = la.subspace_intersection(fh, la.preimage(d_n, self.edge_span(n - 1)))
            sup = la.subspace_sum(fh, la.image(d_up, self.edge_span(n + 1)))
            self._level[n] = ChainLevelData(
                n, inf, sup, fh,
                la.orthogonal_complement_in(inf, fh),
                la.orthogonal_complement_in(fh, sup),
                la.orthogonal_complement_in(sup, self.ambient(n)),
            )
        return self._level[n]

    def inf(self, n: int) -> Subspace:
        return self.level(n).inf

    def sup(self, n: int) -> Subspace:
        return self.level(n).sup


def boundary(k: Hypergraph, n: int, phi: Weight, exact: bool = True) -> LinearOperator:
    if not validate_weight(k, phi):
        raise InvalidWeight("weight fails the compatibility identity")
    return WeightedHypergraph(closure(k), phi, exact).boundary(n)


def chain_level(h: Hypergraph, n: int, phi: Weight, exact: bool = True) -> ChainLevelData:
    if not validate_weight(h, phi):
        raise InvalidWeight("weight fails the compatibility identity")
    return WeightedHypergraph(h, phi, exact).level(n)


def check_complement_condition(wh: WeightedHypergraph, n: int, which: str) -> bool:
    """'inf': the boundary maps Inf_n's complement into Inf_{n-1}'s complement.
    'sup': the boundary maps E_n into E_{n-1}."""
    d = wh.boundary(n).matrix
    if which == "inf":
        src = la.orthogonal_complement(wh.inf(n))
        dst = la.orthogonal_complement(wh.inf(n - 1))
    elif which == "sup":
        src, dst = wh.level(n).e_comp, wh.level(n - 1).e_comp
    else:
        raise ValueError("which must be 'inf' or 'sup'")
    return dst.contains(la.image(d, src))


