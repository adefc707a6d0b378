import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgehyper import linalg as la
from hodgehyper.catalog import quasi_spectrum_mismatch, triangle_family
from hodgehyper.chains import WeightedHypergraph, ZeroWeight, random_evaluation_weight
from hodgehyper.hodge import harmonic_space, laplacian
from hodgehyper.hypergraph import Hypergraph, random_hypergraph
from hodgehyper.linalg import Subspace
from hodgehyper.spectra import (EigenMultiset, ZeroEigenvalue, circ_eq, circ_subset, circ_union,
                                eigen_transfer, plain_subset, quasi_spectrum, spectrum,
                                verify_spectral_suite)

EDGE = Hypergraph.from_edges([["a"], ["b"], ["a", "b"]])
M = EigenMultiset.from_values


def statuses(h, n, phi=None):
    return {r.relation_name: r.status for r in verify_spectral_suite(h, n, phi)}


def test_multiset_binning_and_zero_clamp():
    m = M([2.0, 1e-12, 2.0 + 1e-9, 0.0, 5.0])
    assert m.entries == ((0.0, 2), (pytest.approx(2.0), 2), (5.0, 1))
    assert m.total == 5 and m.zero_multiplicity == 2
    assert m.nonzero == ((pytest.approx(2.0), 2), (5.0, 1))


def test_circ_relations():
    assert circ_eq(M([0, 0, 1, 2]), M([1, 2]))
    assert not circ_eq(M([1, 2]), M([1, 1, 2]))
    assert circ_subset(M([0, 0, 0, 3]), M([3, 4]))
    assert not plain_subset(M([0, 0, 3]), M([3, 4]))
    assert plain_subset(M([0, 3]), M([0, 3, 4]))
    assert circ_union(M([1, 0]), M([1, 2])).entries == ((0.0, 1), (1.0, 2), (2.0, 1))


def test_tolerance_for_near_equal_values():
    assert circ_eq(M([1.0]), M([1.0 + 1e-8]))
    assert not circ_eq(M([1.0]), M([1.0 + 1e-3]))


def test_edge_spectrum():
    assert spectrum(laplacian(EDGE, 0)).entries == ((0.0, 1), (2.0, 1))
    assert spectrum(np.array([[1.0, -1.0], [-1.0, 1.0]])).entries == ((0.0, 1), (2.0, 1))


def test_zero_weight_spectra_are_zero():
    h = random_hypergraph(5, 2, 0.5, 1)
    wh = WeightedHypergraph(h, ZeroWeight())
    for n in range(wh.top_dim + 1):
        for carrier in ("ambient", "inf", "sup"):
            assert not spectrum(laplacian(wh, n, carrier=carrier)).nonzero
        assert all(r.status != "fail" for r in verify_spectral_suite(wh, n))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 10_000))
def test_products_share_nonzero_spectrum(r, c, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(-2, 3, (r, c)).astype(float)
    b = a.T
    assert circ_eq(spectrum(a @ b), spectrum(b @ a))


def test_eigen_transfer_round_trip():
    a = np.array([[1.0, 2.0], [0.0, 1.0], [1.0, 0.0]])
    b = a.T
    lam = float(np.max(np.linalg.eigvalsh(b @ a)))
    t = eigen_transfer(a, b, lam)
    assert t.matrix.shape == (1, 1)
    assert abs(abs(t.matrix[0, 0]) - np.sqrt(lam)) < 1e-9


def test_eigen_transfer_rejects_zero_and_non_eigenvalues():
    a = np.eye(2)
    with pytest.raises(ZeroEigenvalue):
        eigen_transfer(a, a, 0.0)
    with pytest.raises(ValueError):
        eigen_transfer(a, a, 3.0)


def test_quasi_spectrum_trivial_cases():
    op = la.to_exact([[2, 0], [0, 3]])
    assert quasi_spectrum(op, Subspace.zero(2)).entries == ()
    assert quasi_spectrum(op, Subspace.full(2)).entries == ((2.0, 1), (3.0, 1))
    assert quasi_spectrum(op, Subspace.span(la.to_exact([[1], [1]]))).entries == ()
    assert quasi_spectrum(op, Subspace.coordinate(2, [1])).entries == ((3.0, 1),)


def test_quasi_spectrum_of_irrational_eigenvalues_uses_angles():
    op = la.to_exact([[1, 1], [1, 0]])
    golden = (1 + 5 ** 0.5) / 2
    v = la.to_exact([[1], [0]])
    assert quasi_spectrum(op, Subspace.full(2)).multiplicity(golden) == 1
    assert quasi_spectrum(op, Subspace.span(v)).entries == ()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_quasi_spectrum_is_monotone(seed):
    rng = np.random.default_rng(seed)
    x = la.to_exact(rng.integers(-1, 2, (4, 4)))
    op = la.matmul(x, x.T)
    big = Subspace.span(la.to_exact(rng.integers(-1, 2, (4, 3))))
    small = Subspace.span(la.matmul(big.basis, la.to_exact(rng.integers(-1, 2, (big.dim, 1)))))
    assert plain_subset(quasi_spectrum(op, small), quasi_spectrum(op, big))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_unconditional_relations_on_random_hypergraphs(seed):
    h = random_hypergraph(6, 3, 0.3, seed)
    phi = random_evaluation_weight(h, np.random.default_rng(seed))
    wh = WeightedHypergraph(h, phi)
    for n in range(wh.top_dim + 1):
        rel = {r.relation_name: r.status for r in verify_spectral_suite(wh, n)}
        for carrier in ("Inf", "Sup", "Amb"):
            assert rel[f"full_eq_up_union_down_{carrier}"] == "pass"
            assert rel[f"up_eq_down_below_{carrier}"] == "pass"
            assert rel[f"zero_multiplicity_eq_kernel_{carrier}"] == "pass"
        for carrier in ("Inf", "Sup"):
            assert rel[f"quasi_up_in_up_{carrier}"] == "pass"
            assert rel[f"up_vanishes_on_boundaries_{carrier}"] == "pass"


def test_harmonic_dimension_matches_float_zero_multiplicity():
    for h in triangle_family():
        for n in range(3):
            for carrier in ("ambient", "inf", "sup"):
                k = harmonic_space(h, n, carrier=carrier).dim
                assert spectrum(laplacian(h, n, carrier=carrier)).zero_multiplicity == k


def test_low_dimensional_relation_runs_when_hyperedges_are_small():
    s = statuses(triangle_family()[2], 1)
    assert s["low_dim_full_eq_neighbors_Amb"] == "pass"
    big = Hypergraph.from_edges([["a", "b", "c", "d"], ["a", "b"]])
    assert statuses(big, 1)["low_dim_full_eq_neighbors_Amb"] == "skipped"


def test_quasi_spectrum_mismatch():
    """Quasi-eigenvalue transfer from up to down fails on {a, b, ab, abc}."""
    assert statuses(quasi_spectrum_mismatch(), 1)["quasi_up_eq_quasi_down_below_Inf"] == "fail"
    rel = {r.relation_name: r for r in verify_spectral_suite(quasi_spectrum_mismatch(), 0)}
    assert rel["quasi_full_on_boundaries_in_full_Inf"].status == "fail"
    assert rel["quasi_full_on_boundaries_in_full_Inf"].lhs.multiplicity(3.0) == 1


def test_relation_json_shape():
    r = verify_spectral_suite(EDGE, 0)[0]
    assert list(r.to_json()) == ["relation_name", "status", "lhs", "rhs"]
