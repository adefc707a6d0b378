import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgehyper import linalg as la
from hodgehyper.catalog import (harmonic_mismatch, skeleton_pair, three_triangles_with_closure,
                                triangle_family)
from hodgehyper.chains import EvaluationWeight, TrivialWeight, WeightedHypergraph, ZeroWeight, random_evaluation_weight
from hodgehyper.hodge import (HypergraphMorphism, NotAMorphism, ambient_four_decomposition, degree_report,
                              embedded_homology, harmonic_space, hodge_summands, induced_chain_map,
                              is_chain_map, laplacian, pairwise_orthogonal, quotient_betti, s_star_analysis,
                              sup_four_decomposition)
from hodgehyper.hypergraph import Hypergraph, closure, random_hypergraph
from hodgehyper.linalg import Q

H = Hypergraph.from_edges
EDGE = H([["a"], ["b"], ["a", "b"]])


def test_graph_laplacian_of_an_edge():
    assert laplacian(EDGE, 0).full.matrix.tolist() == [[1, -1], [-1, 1]]
    assert laplacian(EDGE, 1).full.matrix.tolist() == [[2]]
    assert laplacian(EDGE, 0).up.matrix.tolist() == [[0, 0], [0, 0]]


def test_laplacian_of_single_vertex_is_zero():
    assert laplacian(H([["a"]]), 0).full.matrix.tolist() == [[0]]


def test_three_triangles_with_closure_degree_one():
    r = degree_report(three_triangles_with_closure(), 1)
    assert (r.betti_embedded, r.betti_complex) == (1, 2)
    assert (r.dim_common, r.dim_ker_s_star, r.dim_coker_s_star) == (1, 0, 1)
    assert r.passed


def test_ambient_decomposition_dims_of_three_triangles_with_closure():
    # 18 edges in the closure: harmonic part 2 splits 1 + 1, the rest is exact and coexact
    assert [p.dim for p in ambient_four_decomposition(three_triangles_with_closure(), 1)] == [1, 1, 6, 10]


@pytest.mark.parametrize("n", [3, 4])
def test_skeleton_pair(n):
    r = degree_report(skeleton_pair(n), 1)
    k = n * (n - 1) // 2
    assert r.betti_embedded == 2 * k
    assert r.dim_common == r.dim_ker_s_star == k
    assert r.passed


def test_triangle_family_betti():
    for h, b0 in zip(triangle_family(), (3, 2, 1, 1)):
        assert [embedded_homology(h, n).betti_embedded for n in range(3)] == [b0, 0, 0]


def test_simplicial_complex_has_no_defect_summands():
    h = closure(random_hypergraph(5, 2, 0.4, 3))
    for n in range(h.max_dim + 1):
        r = degree_report(h, n)
        assert r.dim_ker_s_star == r.dim_coker_s_star == 0
        assert r.betti_embedded == r.betti_complex
        assert r.passed


def test_zero_weight_homology_is_edge_span():
    h = random_hypergraph(5, 2, 0.5, 4)
    wh = WeightedHypergraph(h, ZeroWeight())
    for n in range(wh.top_dim + 1):
        assert embedded_homology(wh, n).betti_embedded == len(h.simplices(n))
        for carrier in ("ambient", "inf", "sup"):
            assert la.is_zero(laplacian(wh, n, carrier=carrier).full.matrix)


def test_evaluation_weight_on_triangle_family():
    w = {s: Q(k + 1) for k, s in enumerate(triangle_family()[3].sorted_edges())}
    for h, b0 in zip(triangle_family(), (3, 2, 1, 1)):
        for c in (Q(1), Q(2)):
            phi = EvaluationWeight(w, c)
            assert [embedded_homology(h, n, phi).betti_embedded for n in range(3)] == [b0, 0, 0]


def test_harmonic_space_is_cycles_and_cocycles():
    h = three_triangles_with_closure()
    wh = WeightedHypergraph(h)
    for n in range(3):
        k = la.subspace_intersection(la.kernel_basis(wh.boundary(n).matrix),
                                     la.kernel_basis(wh.boundary(n + 1).matrix.T))
        assert harmonic_space(wh, n).same_as(k)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_float_backend_matches_exact(seed):
    h = random_hypergraph(5, 3, 0.35, seed)
    for n in range(h.max_dim + 1):
        a = degree_report(WeightedHypergraph(h, exact=True), n).to_json()
        b = degree_report(WeightedHypergraph(h, exact=False), n).to_json()
        assert {k: a[k] for k in a if k != "checks"} == {k: b[k] for k in b if k != "checks"}


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_homology_agrees_three_ways_and_decompositions_are_orthogonal(seed):
    h = random_hypergraph(6, 3, 0.3, seed)
    for phi in (TrivialWeight(), random_evaluation_weight(h, np.random.default_rng(seed))):
        wh = WeightedHypergraph(h, phi)
        for n in range(wh.top_dim + 1):
            rep = embedded_homology(wh, n)
            assert rep.ker_inf_dim == rep.ker_sup_dim == quotient_betti(wh, n)
            assert pairwise_orthogonal(ambient_four_decomposition(wh, n))
            assert pairwise_orthogonal(sup_four_decomposition(wh, n))
            ss = s_star_analysis(wh, n)
            assert ss.rank + ss.ker_dim == rep.betti_embedded
            assert ss.rank + ss.coker_dim == rep.betti_complex


def test_harmonic_mismatch_breaks_the_two_summand_identity():
    """The degree-1 harmonic class of the closure sits in Sup but meets Inf in 0."""
    r = degree_report(harmonic_mismatch(), 1)
    failed = {c.name for c in r.checks if not c.passed}
    assert r.betti_embedded == r.betti_complex == 1
    assert r.dim_common == 0 and r.dim_ker_s_star == 0
    assert {"two_summand_embedded", "two_summand_complex", "amb_harmonic_in_edges_eq_in_sup",
            "sup_harmonic_in_inf_eq_sup_harmonic"} <= failed
    s = hodge_summands(harmonic_mismatch(), 1)
    assert s.harmonic_in_sup.dim == 1


def test_identity_morphism_induces_identity():
    h = three_triangles_with_closure()
    rho = HypergraphMorphism(h, h, {v: v for v in h.vertex_set})
    for n in range(3):
        m = induced_chain_map(rho, n).matrix
        assert (m == la.identity(m.shape[0])).all()
    assert is_chain_map(rho)


def test_collapsing_an_edge_kills_it():
    rho = HypergraphMorphism(EDGE, H([["c"]]), {"a": "c", "b": "c"})
    assert induced_chain_map(rho, 0).matrix.tolist() == [[1, 1]]
    assert induced_chain_map(rho, 1).matrix.shape == (0, 1)
    assert is_chain_map(rho)


def test_non_hyperedge_image_rejected():
    with pytest.raises(NotAMorphism):
        HypergraphMorphism(EDGE, H([["x"], ["y"]]), {"a": "x", "b": "y"})


def test_vertex_swap_picks_up_a_sign():
    tgt = H([["x"], ["y"], ["x", "y"]])
    swap = HypergraphMorphism(EDGE, tgt, {"a": "y", "b": "x"})
    assert induced_chain_map(swap, 1).matrix.tolist() == [[-1]]
    assert is_chain_map(swap)


def test_functoriality():
    a = H([["a", "b", "c"]])
    b = H([["x", "y", "z"]])
    c = H([["p", "q", "r"]])
    f = HypergraphMorphism(a, b, {"a": "y", "b": "z", "c": "x"})
    g = HypergraphMorphism(b, c, {"x": "q", "y": "r", "z": "p"})
    gf = f.compose(g)
    for n in range(3):
        lhs = induced_chain_map(gf, n).matrix
        rhs = la.matmul(induced_chain_map(g, n).matrix, induced_chain_map(f, n).matrix)
        assert (lhs == rhs).all()
    assert is_chain_map(gf)


def test_morphism_requires_total_vertex_map():
    with pytest.raises(NotAMorphism):
        HypergraphMorphism(EDGE, EDGE, {"a": "a"})


def test_report_json_key_order():
    keys = list(degree_report(EDGE, 0).to_json())
    assert keys == ["n", "betti_embedded", "betti_complex", "dim_common", "dim_ker_s_star",
                    "dim_coker_s_star", "summand_dims_ambient", "summand_dims_sup", "checks"]
