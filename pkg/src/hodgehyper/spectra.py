"""Eigenvalue multisets, quasi-spectra of restricted operators, and the spectral relations.

Multisets are compared on their nonzero parts. Values whose absolute size is
below ``zero_tol * max(1, |lambda_max|)`` count as zero; nearby eigenvalues
are merged into one entry when they differ by less than
``bin_tol * max(1, |lambda_max|)``. Both thresholds come from
:func:`hodgehyper.linalg.tolerances`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg

from . import linalg as la
from .chains import LinearOperator, Weight, WeightedHypergraph, check_complement_condition
from .hodge import CARRIERS, LaplacianBundle, as_weighted, harmonic_space, laplacian
from .linalg import Subspace

COMPARE_RTOL = 1e-6


class ZeroEigenvalue(ValueError):
    pass


@dataclass(frozen=True)
class EigenMultiset:
    """Strictly increasing (eigenvalue, multiplicity) pairs."""

    entries: tuple = ()

    @classmethod
    def from_values(cls, values) -> "EigenMultiset":
        values = np.sort(np.asarray(values, dtype=float))
        if values.size == 0:
            return cls(())
        zero_tol, bin_tol = la.tolerances()
        scale = max(1.0, float(np.max(np.abs(values))))
        values = np.where(np.abs(values) <= zero_tol * scale, 0.0, values)
        entries = []
        group = [values[0]]
        for v in values[1:]:
            if v - group[0] <= bin_tol * scale and (v == 0.0) == (group[0] == 0.0):
                group.append(v)
            else:
                entries.append(group)
                group = [v]
        entries.append(group)
        return cls(tuple((float(np.mean(g)), len(g)) for g in entries))

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def multiplicity(self, value: float) -> int:
        return sum(m for v, m in self.entries if _close(v, value))

    @property
    def zero_multiplicity(self) -> int:
        return sum(m for v, m in self.entries if v == 0.0)

    @property
    def nonzero(self) -> tuple:
        return tuple((v, m) for v, m in self.entries if v != 0.0)

    def to_json(self) -> list:
        return [[v, m] for v, m in self.entries]


class QuasiSpectrum(EigenMultiset):
    """Quasi-eigenvalues of an operator restricted to a subspace it need not preserve."""


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= COMPARE_RTOL * max(1.0, abs(a), abs(b))


def _cluster_counts(a: EigenMultiset, b: EigenMultiset, with_zero: bool) -> list[tuple[int, int]]:
    """Group the values of both multisets into clusters of nearby values; count each side."""
    items = [(v, m, 0) for v, m in a.entries] + [(v, m, 1) for v, m in b.entries]
    if not with_zero:
        items = [t for t in items if t[0] != 0.0]
    items.sort()
    clusters: list[list[int]] = []
    last = None
    for v, m, side in items:
        if last is None or not _close(last, v):
            clusters.append([0, 0])
        clusters[-1][side] += m
        last = v
    return [tuple(c) for c in clusters]


def circ_eq(a: EigenMultiset, b: EigenMultiset) -> bool:
    """Equal up to the multiplicity of zero."""
    return all(x == y for x, y in _cluster_counts(a, b, with_zero=False))


def circ_subset(a: EigenMultiset, b: EigenMultiset) -> bool:
    """``a`` contained in ``b`` up to the multiplicity of zero."""
    return all(x <= y for x, y in _cluster_counts(a, b, with_zero=False))


def plain_subset(a: EigenMultiset, b: EigenMultiset) -> bool:
    """Containment including the eigenvalue zero."""
    return all(x <= y for x, y in _cluster_counts(a, b, with_zero=True))


def circ_union(a: EigenMultiset, b: EigenMultiset) -> EigenMultiset:
    """Multiplicity-additive union; zero multiplicities are added as well."""
    values = [v for v, m in a.entries + b.entries for _ in range(m)]
    return EigenMultiset.from_values(values)


# ------------------------------------------------------------------- spectra

def spectrum(op, which: str = "full") -> EigenMultiset:
    """Spectrum of a symmetric matrix, a chain-basis operator, or a Laplacian bundle."""
    if isinstance(op, LaplacianBundle):
        s = la.to_float(op.form(which))
        g = la.to_float(op.gram)
        if s.size == 0:
            return EigenMultiset(())
        vals = scipy.linalg.eigh((s + s.T) / 2, (g + g.T) / 2, eigvals_only=True)
        return EigenMultiset.from_values(vals)
    if isinstance(op, LinearOperator):
        op = op.matrix
    vals, _ = la.symmetric_eigendecomposition(op)
    return EigenMultiset.from_values(vals)


def _rational_candidate(value: float) -> Fraction:
    return Fraction(value).limit_denominator(1000)


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Binned eigenvalues of a symmetric matrix with one eigenspace basis per bin.

    ``exact_spaces[k]`` is the exact rational eigenspace when the bin's value is
    recognized as rational (always for 0 on exact input), else None; the float
    orthonormal eigenvectors are always kept.
    """

    entries: tuple
    float_spaces: tuple
    exact_spaces: tuple


def eigen_decompose(op) -> EigenDecomposition:
    if isinstance(op, LinearOperator):
        op = op.matrix
    vals, vecs = la.symmetric_eigendecomposition(op)
    binned = EigenMultiset.from_values(vals)
    exact = la.is_exact(op)
    zero_tol, bin_tol = la.tolerances()
    scale = max(1.0, float(np.max(np.abs(vals)))) if vals.size else 1.0
    n = op.shape[0]
    floats, exacts = [], []
    for value, mult in binned.entries:
        if value == 0.0:
            idx = [i for i, v in enumerate(vals) if abs(v) <= zero_tol * scale]
        else:
            idx = [i for i, v in enumerate(vals) if abs(v - value) <= bin_tol * scale and abs(v) > zero_tol * scale]
        floats.append(vecs[:, idx])
        space = None
        if exact:
            cand = Fraction(0) if value == 0.0 else _rational_candidate(value)
            if abs(float(cand) - value) <= 1e-9 * scale:
                eig = la.kernel_basis(op - la.Q(cand) * la.identity(n))
                if eig.dim == mult:
                    space = eig
        exacts.append(space)
    return EigenDecomposition(binned.entries, tuple(floats), tuple(exacts))


def quasi_spectrum(op, w: Subspace) -> QuasiSpectrum:
    """Eigenvalues of a symmetric ``op`` having eigenvectors inside ``w``.

    The multiplicity of lambda is dim(E_lambda intersect w). It is computed
    exactly for lambda = 0 and for rational lambda when ``op`` is exact;
    otherwise from principal angles between the float eigenspace and ``w``.
    ``op`` may also be a precomputed :class:`EigenDecomposition`.
    """
    dec = op if isinstance(op, EigenDecomposition) else eigen_decompose(op)
    size = sum(m for _, m in dec.entries)
    if size != w.ambient_dim:
        raise la.AmbientMismatch("subspace does not live in the operator's space")
    if w.dim == 0:
        return QuasiSpectrum(())
    w_float = None
    w_exact = None
    entries = []
    for (value, _), eig_f, eig_q in zip(dec.entries, dec.float_spaces, dec.exact_spaces):
        if eig_q is not None:
            if w_exact is None:
                w_exact = w if w.exact else Subspace.span(la.to_exact(w.basis))
            m = la.subspace_intersection(eig_q, w_exact).dim
        else:
            if w_float is None:
                w_float = la.column_basis(la.to_float(w.basis))
            cos = np.linalg.svd(eig_f.T @ w_float, compute_uv=False)
            m = int(np.sum(cos >= 1 - 1e-7))
        if m:
            entries.append((value, m))
    return QuasiSpectrum(tuple(entries))


def eigen_transfer(a: np.ndarray, b: np.ndarray, lam: float) -> LinearOperator:
    """The map x -> Bx from E_lam(AB) to E_lam(BA) in orthonormal eigenspace bases.

    Raises if lam is zero or the map is not invertible with inverse y -> Ay / lam.
    """
    zero_tol, _ = la.tolerances()
    a, b = la.to_float(a), la.to_float(b)
    if abs(lam) <= zero_tol * max(1.0, abs(lam)):
        raise ZeroEigenvalue("transfer needs a nonzero eigenvalue")
    e_ab = _eigenspace(a @ b, lam)
    e_ba = _eigenspace(b @ a, lam)
    fwd = e_ba.T @ b @ e_ab
    inv = e_ab.T @ a @ e_ba / lam
    k = e_ab.shape[1]
    if e_ba.shape[1] != k or k == 0 or not np.allclose(inv @ fwd, np.eye(k), atol=1e-7):
        raise ValueError(f"{lam} does not give matching eigenspaces of AB and BA")
    return LinearOperator(fwd, Subspace(e_ab), Subspace(e_ba))


def _eigenspace(m: np.ndarray, lam: float) -> np.ndarray:
    shifted = m - lam * np.eye(m.shape[0])
    _, s, vh = np.linalg.svd(shifted)
    tol = 1e-7 * max(1.0, abs(lam), float(s[0]) if s.size else 0.0)
    r = int(np.sum(s > tol))
    return vh[r:].T.copy()


# --------------------------------------------------------------- the suite

@dataclass(frozen=True)
class SpectralRelation:
    relation_name: str
    status: str
    lhs: EigenMultiset = field(default_factory=EigenMultiset)
    rhs: EigenMultiset = field(default_factory=EigenMultiset)
    detail: str = ""

    def to_json(self) -> dict:
        return {"relation_name": self.relation_name, "status": self.status,
                "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json()}


def _relation(name: str, holds: bool, lhs: EigenMultiset, rhs: EigenMultiset) -> SpectralRelation:
    return SpectralRelation(name, "pass" if holds else "fail", lhs, rhs)


def _skipped(name: str, reason: str) -> SpectralRelation:
    return SpectralRelation(name, "skipped", detail=reason)


class SpectraCache:
    """Memoized spectra and quasi-spectra for one weighted hypergraph."""

    def __init__(self, wh: WeightedHypergraph):
        self.wh = wh
        self._memo: dict = {}

    def s(self, n: int, carrier: str, which: str = "full") -> EigenMultiset:
        key = ("s", n, carrier, which)
        if key not in self._memo:
            self._memo[key] = spectrum(laplacian(self.wh, n, carrier=carrier), which)
        return self._memo[key]

    def amb(self, n: int, which: str) -> np.ndarray:
        return laplacian(self.wh, n, carrier="ambient").operator(which).matrix

    def qs(self, n: int, which: str, w: Subspace) -> QuasiSpectrum:
        key = ("dec", n, which)
        if key not in self._memo:
            self._memo[key] = eigen_decompose(self.amb(n, which))
        return quasi_spectrum(self._memo[key], w)

    def boundary_image(self, n: int, carrier: str) -> Subspace:
        """d_n applied to Inf_n or Sup_n, a subspace of degree n-1."""
        space = self.wh.inf(n) if carrier == "inf" else self.wh.sup(n)
        return la.image(self.wh.boundary(n).matrix, space)


def _has_dims(h, dims) -> bool:
    return any(len(e) - 1 in dims for e in h.edges)


def verify_spectral_suite(h, n: int, phi: Weight | None = None) -> list[SpectralRelation]:
    """Evaluate every spectral relation at degree ``n``; conditional ones may be skipped."""
    wh = as_weighted(h, phi, exact=True)
    sp = SpectraCache(wh)
    out: list[SpectralRelation] = []
    tag = {"inf": "Inf", "sup": "Sup", "ambient": "Amb"}

    for carrier in ("inf", "sup", "ambient"):
        full = sp.s(n, carrier)
        union = circ_union(sp.s(n, carrier, "up"), sp.s(n, carrier, "down"))
        out.append(_relation(f"full_eq_up_union_down_{tag[carrier]}",
                             circ_eq(full, union), full, union))
    for carrier in ("inf", "sup", "ambient"):
        up = sp.s(n, carrier, "up")
        down = sp.s(n - 1, carrier, "down")
        out.append(_relation(f"up_eq_down_below_{tag[carrier]}", circ_eq(up, down), up, down))
    for carrier in ("inf", "sup"):
        space = wh.inf(n) if carrier == "inf" else wh.sup(n)
        lhs = sp.qs(n, "up", space)
        rhs = sp.qs(n - 1, "down", sp.boundary_image(n, carrier))
        out.append(_relation(f"quasi_up_eq_quasi_down_below_{tag[carrier]}", circ_eq(lhs, rhs), lhs, rhs))
    for carrier in ("inf", "sup"):
        space = wh.inf(n) if carrier == "inf" else wh.sup(n)
        lhs = sp.qs(n, "up", space)
        rhs = sp.s(n, carrier, "up")
        out.append(_relation(f"quasi_up_in_up_{tag[carrier]}", plain_subset(lhs, rhs), lhs, rhs))
    for carrier in ("inf", "sup"):
        img = sp.boundary_image(n + 1, carrier)
        lhs = sp.qs(n, "full", img)
        rhs = sp.s(n, carrier)
        out.append(_relation(f"quasi_full_on_boundaries_in_full_{tag[carrier]}",
                             circ_subset(lhs, rhs), lhs, rhs))
        up_on_img = sp.qs(n, "up", img)
        out.append(_relation(f"up_vanishes_on_boundaries_{tag[carrier]}",
                             not up_on_img.nonzero, up_on_img, EigenMultiset(())))
    for carrier in CARRIERS:
        s = sp.s(n, carrier)
        k = harmonic_space(wh, n, carrier=carrier).dim
        out.append(_relation(f"zero_multiplicity_eq_kernel_{tag[carrier]}", s.zero_multiplicity == k,
                             s, EigenMultiset(((0.0, k),) if k else ())))

    if n == 1:
        if wh.h.max_dim <= 2:
            for carrier in ("inf", "sup", "ambient"):
                lhs = sp.s(1, carrier)
                rhs = circ_union(sp.s(0, carrier), sp.s(2, carrier))
                out.append(_relation(f"low_dim_full_eq_neighbors_{tag[carrier]}", circ_eq(lhs, rhs), lhs, rhs))
        else:
            for carrier in ("inf", "sup", "ambient"):
                out.append(_skipped(f"low_dim_full_eq_neighbors_{tag[carrier]}", "hyperedges of dimension > 2"))

    for carrier, banned in (("inf", {n - 1, n + 3}), ("sup", {n - 1, n, n + 3, n + 4})):
        name = f"gap_full_eq_neighbors_{tag[carrier]}"
        if _has_dims(wh.h, banned):
            out.append(_skipped(name, f"hyperedges of a dimension in {sorted(banned)}"))
            continue
        lhs = sp.s(n + 1, carrier)
        rhs = circ_union(sp.s(n, carrier), sp.s(n + 2, carrier))
        out.append(_relation(name, circ_eq(lhs, rhs), lhs, rhs))

    # Hypothesis as usually stated: complement condition at degree n+1 only.
    # The "_both_degrees" variant also requires it at degree n.
    for carrier in ("inf", "sup"):
        space = wh.inf(n) if carrier == "inf" else wh.sup(n)
        at_next = check_complement_condition(wh, n + 1, carrier)
        at_both = at_next and check_complement_condition(wh, n, carrier)
        lhs = rhs = None
        for name, hyp in ((f"complement_full_eq_quasi_up_down_{tag[carrier]}", at_next),
                          (f"complement_full_eq_quasi_up_down_{tag[carrier]}_both_degrees", at_both)):
            if not hyp:
                out.append(_skipped(name, "complement condition fails"))
                continue
            if lhs is None:
                lhs = sp.s(n, carrier)
                rhs = circ_union(sp.qs(n, "up", space), sp.qs(n, "down", sp.boundary_image(n + 1, carrier)))
            out.append(_relation(name, circ_eq(lhs, rhs), lhs, rhs))
    return out
