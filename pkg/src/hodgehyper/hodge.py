"""Laplacians on the closure, Inf and Sup chain complexes, and the Hodge summands.

Naming follows the convention where ``up`` is the part built from the
boundary out of degree n, ``(d_n|V)^* (d_n|V)``, and ``down`` the part built from
the boundary into degree n, ``(d_{n+1}|V)(d_{n+1}|V)^*``.
All subspaces returned here live in ambient coordinates of F(closure)_n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import linalg as la
from .chains import (ChainBasis, LinearOperator, TrivialWeight, Weight, WeightedHypergraph,
                     adjoint, check_complement_condition, restrict)
from .hypergraph import Hypergraph, closure, faces, simplex, simplex_key
from .linalg import Subspace

CARRIERS = ("ambient", "inf", "sup")


class InternalInconsistency(RuntimeError):
    pass


class NotAMorphism(ValueError):
    pass


def as_weighted(h, phi: Weight | None = None, exact: bool = True) -> WeightedHypergraph:
    if isinstance(h, WeightedHypergraph):
        return h
    return WeightedHypergraph(h, phi, exact)


def _cached(wh: WeightedHypergraph, key, compute: Callable):
    if key not in wh.cache:
        wh.cache[key] = compute()
    return wh.cache[key]


def carrier_space(wh: WeightedHypergraph, n: int, carrier: str) -> Subspace:
    if carrier == "ambient":
        return wh.ambient(n)
    if carrier == "inf":
        return wh.inf(n)
    if carrier == "sup":
        return wh.sup(n)
    raise ValueError(f"unknown carrier {carrier!r}")


# ----------------------------------------------------------------- Laplacians

@dataclass(frozen=True, eq=False)
class LaplacianBundle:
    """up, down and full Laplacians of one carrier in the coordinates of ``space``.

    The operator matrices are self-adjoint for the induced inner product; the
    symmetric matrices ``G @ L`` (G the Gram matrix of the basis) are returned
    by :meth:`form`.
    """

    n: int
    carrier: str
    space: Subspace
    up: LinearOperator
    down: LinearOperator
    full: LinearOperator
    gram: np.ndarray = field(repr=False)

    def operator(self, which: str = "full") -> LinearOperator:
        return {"full": self.full, "up": self.up, "down": self.down}[which]

    def form(self, which: str = "full") -> np.ndarray:
        return la.matmul(self.gram, self.operator(which).matrix)

    def kernel(self, which: str = "full") -> Subspace:
        """Kernel as a subspace of ambient coordinates."""
        k = la.null_matrix(self.operator(which).matrix)
        return Subspace.span(la.matmul(self.space.basis, k))

    def ambient_matrix(self, which: str = "full") -> np.ndarray:
        """The operator extended by zero on the orthogonal complement of the carrier."""
        b = self.space.basis
        if b.shape[1] == 0:
            return la.zeros(b.shape[0], b.shape[0], la.is_exact(b))
        p = la.matmul(la.inverse(self.gram), b.T)
        return la.matmul(la.matmul(b, self.operator(which).matrix), p)


def laplacian(h, n: int, phi: Weight | None = None, carrier: str = "ambient",
              exact: bool = True) -> LaplacianBundle:
    wh = as_weighted(h, phi, exact)
    return _cached(wh, ("laplacian", n, carrier), lambda: _laplacian(wh, n, carrier))


def _laplacian(wh: WeightedHypergraph, n: int, carrier: str) -> LaplacianBundle:
    v_lo, v, v_hi = (carrier_space(wh, k, carrier) for k in (n - 1, n, n + 1))
    if carrier == "ambient":
        d_out, d_in = wh.boundary(n), wh.boundary(n + 1)
        v_op = ChainBasis(n, wh.basis(n).simplices)
        d_out = LinearOperator(d_out.matrix, v_op, d_out.codomain)
        d_in = LinearOperator(d_in.matrix, d_in.domain, v_op)
    else:
        d_out = restrict(wh.boundary(n), v, v_lo)
        d_in = restrict(wh.boundary(n + 1), v_hi, v)
    up = adjoint(d_out) @ d_out
    down = d_in @ adjoint(d_in)
    full = LinearOperator(up.matrix + down.matrix, up.domain, up.codomain)
    gram = la.matmul(v.basis.T, v.basis)
    return LaplacianBundle(n, carrier, v, up, down, full, gram)


def harmonic_space(h, n: int, phi: Weight | None = None, carrier: str = "ambient",
                   exact: bool = True) -> Subspace:
    wh = as_weighted(h, phi, exact)
    return _cached(wh, ("harmonic", n, carrier), lambda: laplacian(wh, n, carrier=carrier).kernel())


# ------------------------------------------------------------------ homology

@dataclass(frozen=True, eq=False)
class HomologyReport:
    n: int
    betti_embedded: int
    betti_complex: int
    ker_inf_dim: int
    ker_sup_dim: int
    ker_ambient_dim: int
    harmonic_inf_basis: Subspace
    harmonic_sup_basis: Subspace
    harmonic_ambient_basis: Subspace


def cycles_in_edges(wh: WeightedHypergraph, n: int) -> Subspace:
    """F(H)_n intersected with the kernel of the boundary."""
    return la.subspace_intersection(wh.edge_span(n), la.kernel_basis(wh.boundary(n).matrix))


def boundaries_in_edges(wh: WeightedHypergraph, n: int) -> Subspace:
    """F(H)_n intersected with the boundary of F(H)_{n+1}."""
    img = la.image(wh.boundary(n + 1).matrix, wh.edge_span(n + 1))
    return la.subspace_intersection(wh.edge_span(n), img)


def quotient_betti(wh: WeightedHypergraph, n: int) -> int:
    """Embedded homology dimension from cycles modulo boundaries, no Laplacians."""
    return cycles_in_edges(wh, n).dim - boundaries_in_edges(wh, n).dim


def embedded_homology(h, n: int, phi: Weight | None = None, exact: bool = True) -> HomologyReport:
    wh = as_weighted(h, phi, exact)

    def compute() -> HomologyReport:
        k_inf = harmonic_space(wh, n, carrier="inf")
        k_sup = harmonic_space(wh, n, carrier="sup")
        k_amb = harmonic_space(wh, n, carrier="ambient")
        oracle = quotient_betti(wh, n)
        if not k_inf.dim == k_sup.dim == oracle:
            raise InternalInconsistency(
                f"degree {n}: Inf kernel {k_inf.dim}, Sup kernel {k_sup.dim}, quotient {oracle}")
        return HomologyReport(n, oracle, k_amb.dim, k_inf.dim, k_sup.dim, k_amb.dim,
                              k_inf, k_sup, k_amb)

    return _cached(wh, ("homology", n), compute)


# ------------------------------------------------------------- Hodge summands

@dataclass(frozen=True, eq=False)
class HodgeSummands:
    n: int
    common: Subspace
    ker_s_star: Subspace
    coker_s_star: Subspace
    boundary_part: Subspace
    coboundary_part: Subspace
    harmonic_in_sup: Subspace


def hodge_summands(h, n: int, phi: Weight | None = None, exact: bool = True) -> HodgeSummands:
    wh = as_weighted(h, phi, exact)

    def compute() -> HodgeSummands:
        k_amb = harmonic_space(wh, n, carrier="ambient")
        k_sup = harmonic_space(wh, n, carrier="sup")
        common = la.subspace_intersection(k_amb, wh.inf(n))
        amb_in_sup = la.subspace_intersection(k_amb, wh.sup(n))
        return HodgeSummands(
            n,
            common,
            la.orthogonal_complement_in(amb_in_sup, k_sup),
            la.orthogonal_complement_in(amb_in_sup, k_amb),
            la.image(wh.boundary(n + 1).matrix),
            la.image(wh.boundary(n).matrix.T),
            amb_in_sup,
        )

    return _cached(wh, ("summands", n), compute)


def ambient_four_decomposition(h, n: int, phi: Weight | None = None, exact: bool = True) -> list[Subspace]:
    """[common, coker summand, image of d_{n+1}, image of d_n^*] inside F(closure)_n."""
    wh = as_weighted(h, phi, exact)
    s = hodge_summands(wh, n)
    return [s.common, s.coker_s_star, s.boundary_part, s.coboundary_part]


def sup_four_decomposition(h, n: int, phi: Weight | None = None, exact: bool = True) -> list[Subspace]:
    """[common, ker summand, d_{n+1} Sup_{n+1}, (d_n|Sup)^* Sup_{n-1}] inside Sup_n."""
    wh = as_weighted(h, phi, exact)
    s = hodge_summands(wh, n)
    sup_lo, sup, sup_hi = wh.sup(n - 1), wh.sup(n), wh.sup(n + 1)
    d_in = la.image(wh.boundary(n + 1).matrix, sup_hi)
    co = adjoint(restrict(wh.boundary(n), sup, sup_lo))
    co_img = Subspace.span(la.matmul(sup.basis, co.matrix))
    return [s.common, s.ker_s_star, d_in, co_img]


def pairwise_orthogonal(parts: list[Subspace]) -> bool:
    return all(parts[i].is_orthogonal_to(parts[j])
               for i in range(len(parts)) for j in range(i + 1, len(parts)))


# ---------------------------------------------------------------- morphisms

@dataclass(frozen=True, eq=False)
class HypergraphMorphism:
    """A vertex map sending every hyperedge of ``source`` onto a hyperedge of ``target``."""

    source: Hypergraph
    target: Hypergraph
    vertex_map: dict

    def __post_init__(self):
        missing = self.source.vertex_set - set(self.vertex_map)
        if missing:
            raise NotAMorphism(f"vertex map undefined on {sorted(map(str, missing))}")
        for e in self.source.edges:
            if self.image(e) not in self.target.edges:
                raise NotAMorphism(f"image of {e} is not a hyperedge of the target")

    def image(self, s) -> tuple:
        return simplex(self.vertex_map[v] for v in s)

    def compose(self, after: "HypergraphMorphism") -> "HypergraphMorphism":
        """``after`` applied after ``self``."""
        return HypergraphMorphism(self.source, after.target,
                                  {v: after.vertex_map[w] for v, w in self.vertex_map.items()})


def _permutation_sign(seq: list) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[j] < seq[i]:
                sign = -sign
    return sign


def induced_chain_map(rho: HypergraphMorphism, n: int, exact: bool = True) -> LinearOperator:
    """Matrix of the induced map F(closure source)_n -> F(closure target)_n.

    A simplex goes to the sorted image with the sign of the sorting permutation,
    or to zero when two vertices collide.
    """
    src = ChainBasis(n, tuple(closure(rho.source).simplices(n)))
    tgt = ChainBasis(n, tuple(closure(rho.target).simplices(n)))
    m = la.zeros(tgt.dim, src.dim)
    for c, s in enumerate(src.simplices):
        img = [rho.vertex_map[v] for v in s]
        if len(set(img)) < len(img):
            continue
        target = simplex(img)
        order = [target.index(v) for v in img]
        m[tgt.index[target], c] = la.Q(_permutation_sign(order))
    return LinearOperator(la.like(m, exact), src, tgt)


def is_chain_map(rho: HypergraphMorphism, phi_src: Weight | None = None,
                 phi_tgt: Weight | None = None, max_degree: int | None = None) -> bool:
    src = WeightedHypergraph(rho.source, phi_src)
    tgt = WeightedHypergraph(rho.target, phi_tgt)
    top = src.top_dim if max_degree is None else max_degree
    for n in range(1, top + 1):
        lhs = la.matmul(tgt.boundary(n).matrix, induced_chain_map(rho, n).matrix)
        rhs = la.matmul(induced_chain_map(rho, n - 1).matrix, src.boundary(n).matrix)
        if np.any(lhs != rhs):
            return False
    return True


# ----------------------------------------------------------------------- s*

@dataclass(frozen=True)
class SStarAnalysis:
    rank: int
    ker_dim: int
    coker_dim: int


def s_star_analysis(h, n: int, phi: Weight | None = None, exact: bool = True) -> SStarAnalysis:
    """Rank of the map from embedded homology to homology of the closure.

    Computed on quotients: cycles of the Inf complex taken modulo boundaries of
    the closure.
    """
    wh = as_weighted(h, phi, exact)

    def compute() -> SStarAnalysis:
        z = cycles_in_edges(wh, n)
        b = la.image(wh.boundary(n + 1).matrix)
        rank = la.subspace_sum(z, b).dim - b.dim
        rep = embedded_homology(wh, n)
        return SStarAnalysis(rank, rep.betti_embedded - rank, rep.betti_complex - rank)

    return _cached(wh, ("s_star", n), compute)


# ------------------------------------------------------------------- checks

@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True, eq=False)
class DegreeReport:
    n: int
    betti_embedded: int
    betti_complex: int
    dim_common: int
    dim_ker_s_star: int
    dim_coker_s_star: int
    summand_dims_ambient: list
    summand_dims_sup: list
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "betti_embedded": self.betti_embedded,
            "betti_complex": self.betti_complex,
            "dim_common": self.dim_common,
            "dim_ker_s_star": self.dim_ker_s_star,
            "dim_coker_s_star": self.dim_coker_s_star,
            "summand_dims_ambient": list(self.summand_dims_ambient),
            "summand_dims_sup": list(self.summand_dims_sup),
            "checks": [{"name": c.name, "pass": c.passed} for c in self.checks],
        }


def _dims(a: int, b: int) -> str:
    return f"{a} vs {b}"


def verify_diagram_isos(h, n: int, phi: Weight | None = None, exact: bool = True) -> list[Check]:
    """Dimension and subspace identities relating the harmonic spaces at degree n."""
    wh = as_weighted(h, phi, exact)
    k_amb = harmonic_space(wh, n, carrier="ambient")
    k_sup = harmonic_space(wh, n, carrier="sup")
    k_inf = harmonic_space(wh, n, carrier="inf")
    inf, fh, sup = wh.inf(n), wh.edge_span(n), wh.sup(n)
    a_inf = la.subspace_intersection(k_amb, inf).dim
    a_fh = la.subspace_intersection(k_amb, fh).dim
    a_sup = la.subspace_intersection(k_amb, sup).dim
    s_inf = la.subspace_intersection(k_sup, inf).dim

    ker_d = la.kernel_basis(wh.boundary(n).matrix)
    lhs = la.subspace_intersection(ker_d, sup)
    rhs = la.subspace_sum(la.subspace_intersection(ker_d, inf),
                          la.image(wh.boundary(n + 1).matrix, wh.edge_span(n + 1)))
    ker_char = la.subspace_intersection(ker_d, la.kernel_basis(wh.boundary(n + 1).matrix.T))
    return [
        Check("amb_harmonic_in_inf_eq_in_edges", a_inf == a_fh, _dims(a_inf, a_fh)),
        Check("amb_harmonic_in_edges_eq_in_sup", a_fh == a_sup, _dims(a_fh, a_sup)),
        Check("sup_harmonic_in_inf_eq_sup_harmonic", s_inf == k_sup.dim, _dims(s_inf, k_sup.dim)),
        Check("sup_harmonic_eq_inf_harmonic", k_sup.dim == k_inf.dim, _dims(k_sup.dim, k_inf.dim)),
        Check("sup_cycles_split", lhs.same_as(rhs), _dims(lhs.dim, rhs.dim)),
        Check("harmonic_eq_cycles_and_cocycles", ker_char.same_as(k_amb), _dims(ker_char.dim, k_amb.dim)),
    ]


def degree_report(h, n: int, phi: Weight | None = None, exact: bool = True) -> DegreeReport:
    """All degree-n quantities and the pass/fail list for every identity checked."""
    wh = as_weighted(h, phi, exact)
    hom = embedded_homology(wh, n)
    s = hodge_summands(wh, n)
    amb4 = ambient_four_decomposition(wh, n)
    sup4 = sup_four_decomposition(wh, n)
    ss = s_star_analysis(wh, n)
    amb_dims = [p.dim for p in amb4]
    sup_dims = [p.dim for p in sup4]
    b_emb, b_cx = hom.betti_embedded, hom.betti_complex
    checks = [
        Check("hodge_iso_inf_sup_quotient", hom.ker_inf_dim == hom.ker_sup_dim == b_emb,
              f"{hom.ker_inf_dim}, {hom.ker_sup_dim}, {b_emb}"),
        Check("two_summand_embedded", s.common.dim + s.ker_s_star.dim == b_emb,
              _dims(s.common.dim + s.ker_s_star.dim, b_emb)),
        Check("two_summand_complex", s.common.dim + s.coker_s_star.dim == b_cx,
              _dims(s.common.dim + s.coker_s_star.dim, b_cx)),
        Check("common_orthogonal_to_ker", s.common.is_orthogonal_to(s.ker_s_star)),
        Check("common_orthogonal_to_coker", s.common.is_orthogonal_to(s.coker_s_star)),
        Check("four_summand_ambient_dims", sum(amb_dims) == wh.basis(n).dim,
              _dims(sum(amb_dims), wh.basis(n).dim)),
        Check("four_summand_ambient_orthogonal", pairwise_orthogonal(amb4)),
        Check("four_summand_sup_dims", sum(sup_dims) == wh.sup(n).dim, _dims(sum(sup_dims), wh.sup(n).dim)),
        Check("four_summand_sup_orthogonal", pairwise_orthogonal(sup4)),
        Check("s_star_ker_matches_summand", ss.ker_dim == s.ker_s_star.dim, _dims(ss.ker_dim, s.ker_s_star.dim)),
        Check("s_star_coker_matches_summand", ss.coker_dim == s.coker_s_star.dim,
              _dims(ss.coker_dim, s.coker_s_star.dim)),
        Check("s_star_vanishes_on_ker_summand", s.boundary_part.contains(s.ker_s_star)),
    ]
    checks += verify_diagram_isos(wh, n)
    return DegreeReport(n, b_emb, b_cx, s.common.dim, s.ker_s_star.dim, s.coker_s_star.dim,
                        amb_dims, sup_dims, checks)


def complement_conditions(h, n: int, phi: Weight | None = None, exact: bool = True) -> dict[str, bool]:
    wh = as_weighted(h, phi, exact)
    return {which: check_complement_condition(wh, n, which) for which in ("inf", "sup")}
