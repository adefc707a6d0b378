"""Dense linear algebra over exact rationals and float64.

Every function dispatches on the dtype of its inputs: ``object`` arrays hold
``flint.fmpq`` rationals and are handled exactly (elimination runs in FLINT),
``float64`` arrays go through SVD-based routines with the thresholds returned
by :func:`tolerances`.
Subspaces are stored as column bases; exact bases are kept in reduced echelon
form so equal subspaces print identically, float bases are orthonormal.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import reduce

from fractions import Fraction

import flint
import numpy as np

DEFAULT_ZERO_TOL = 1e-9
DEFAULT_BIN_TOL = 1e-7


class LinalgError(ValueError):
    pass


class AmbientMismatch(LinalgError):
    pass


class NotASubspace(LinalgError):
    pass


class NotSymmetric(LinalgError):
    pass


def tolerances() -> tuple[float, float]:
    """Return ``(zero_tol, bin_tol)``, honouring ``HODGEHYPER_TOL``.

    The variable holds one number (zero threshold only) or two separated by a
    comma (zero threshold, eigenvalue bin width).
    """
    raw = os.environ.get("HODGEHYPER_TOL", "").strip()
    if not raw:
        return DEFAULT_ZERO_TOL, DEFAULT_BIN_TOL
    parts = [float(p) for p in raw.split(",")]
    if len(parts) == 1:
        return parts[0], DEFAULT_BIN_TOL
    return parts[0], parts[1]


# ---------------------------------------------------------------- conversion

Rational = flint.fmpq


def Q(x) -> flint.fmpq:
    """Exact rational from an int, string "p/q", Fraction, float or fmpq."""
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, (int, np.integer)):
        return flint.fmpq(int(x))
    if isinstance(x, str):
        f = Fraction(x.strip())
    else:
        f = Fraction(x)
    return flint.fmpq(f.numerator, f.denominator)


_to_q = np.frompyfunc(Q, 1, 1)
_to_f = np.frompyfunc(float, 1, 1)


def is_exact(a: np.ndarray) -> bool:
    return a.dtype == object


def to_exact(a) -> np.ndarray:
    a = np.asarray(a)
    if a.dtype == object and (a.size == 0 or isinstance(a.flat[0], flint.fmpq)):
        return a
    if a.size == 0:
        return np.empty(a.shape, dtype=object)
    return _to_q(a).astype(object)


def to_float(a) -> np.ndarray:
    a = np.asarray(a)
    if a.dtype == object:
        if a.size == 0:
            return np.zeros(a.shape)
        return _to_f(a).astype(float)
    return a.astype(float)


def zeros(rows: int, cols: int, exact: bool = True) -> np.ndarray:
    if exact:
        out = np.empty((rows, cols), dtype=object)
        out.fill(flint.fmpq(0))
        return out
    return np.zeros((rows, cols))


def identity(n: int, exact: bool = True) -> np.ndarray:
    out = zeros(n, n, exact)
    for i in range(n):
        out[i, i] = flint.fmpq(1) if exact else 1.0
    return out


def like(a: np.ndarray, exact: bool) -> np.ndarray:
    return to_exact(a) if exact else to_float(a)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product that keeps object dtype and handles empty inner dims."""
    if a.shape[1] != b.shape[0]:
        raise AmbientMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1], is_exact(a) or is_exact(b))
    return a @ b


def is_zero(a: np.ndarray) -> bool:
    if a.size == 0:
        return True
    if is_exact(a):
        return not np.any(a != 0)
    zero_tol, _ = tolerances()
    return float(np.max(np.abs(a))) <= zero_tol * 100


# ----------------------------------------------------------------- exact core

def _to_flint(a: np.ndarray) -> flint.fmpq_mat:
    m, n = a.shape
    return flint.fmpq_mat(m, n, list(a.flat))


def _from_flint(mat: flint.fmpq_mat, shape: tuple) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.flat[:] = mat.entries()
    return out


def rref(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over the rationals and its pivot columns."""
    a = to_exact(a)
    if a.size == 0:
        return a.copy(), []
    R, r = _to_flint(a).rref()
    out = _from_flint(R, a.shape)
    pivots = [int(np.flatnonzero(out[i] != 0)[0]) for i in range(r)]
    return out, pivots


def bareiss_rank(a: np.ndarray) -> int:
    """Rank by fraction-free elimination in pure Python; a cross-check for :func:`rank`."""
    rows = []
    for row in a:
        den = reduce(math.lcm, (int(x.denominator) for x in row), 1)
        rows.append([int(x.numerator) * (den // int(x.denominator)) for x in row])
    m = len(rows)
    n = len(rows[0]) if m else 0
    rank = 0
    prev = 1
    for c in range(n):
        if rank == m:
            break
        piv = next((i for i in range(rank, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][c]
        for i in range(rank + 1, m):
            f = rows[i][c]
            rows[i] = [(p * rows[i][j] - f * rows[rank][j]) // prev for j in range(n)]
        prev = p
        rank += 1
    return rank


def rank(m: np.ndarray) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    if is_exact(m):
        return _to_flint(m).rank()
    s = np.linalg.svd(m, compute_uv=False)
    zero_tol, _ = tolerances()
    return int(np.sum(s > zero_tol * max(1.0, float(s[0]))))


def null_matrix(m: np.ndarray) -> np.ndarray:
    """Columns spanning the kernel of ``m``."""
    rows, cols = m.shape
    if is_exact(m):
        R, pivots = rref(m)
        free = [c for c in range(cols) if c not in set(pivots)]
        out = zeros(cols, len(free))
        for k, f in enumerate(free):
            out[f, k] = flint.fmpq(1)
            for i, p in enumerate(pivots):
                out[p, k] = -R[i, f]
        return out
    if rows == 0:
        return np.eye(cols)
    if cols == 0:
        return np.zeros((0, 0))
    _, s, vh = np.linalg.svd(m)
    zero_tol, _ = tolerances()
    r = int(np.sum(s > zero_tol * max(1.0, float(s[0])))) if s.size else 0
    return vh[r:].T.copy()


def column_basis(a: np.ndarray) -> np.ndarray:
    """Independent columns spanning the column space of ``a``.

    Exact: the transposed nonzero rows of rref(a^T), a canonical form.
    Float: left singular vectors above threshold (orthonormal).
    """
    rows, cols = a.shape
    if is_exact(a):
        if cols == 0:
            return zeros(rows, 0)
        R, pivots = rref(a.T)
        return R[: len(pivots)].T.copy()
    if cols == 0 or rows == 0:
        return np.zeros((rows, 0))
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    zero_tol, _ = tolerances()
    r = int(np.sum(s > zero_tol * max(1.0, float(s[0])))) if s.size else 0
    return u[:, :r].copy()


def inverse(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if not is_exact(a):
        return np.linalg.inv(a)
    R, pivots = rref(np.hstack([a, identity(n)]))
    assert pivots[:n] == list(range(n)), "matrix is singular"
    return R[:, n:].copy()


def solve_in_basis(basis: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Coordinates ``x`` with ``basis @ x == y``; raises if ``y`` leaves the span."""
    k = basis.shape[1]
    if k == 0:
        if not is_zero(y):
            raise NotASubspace("vector not in the zero subspace")
        return zeros(0, y.shape[1], is_exact(basis))
    if is_exact(basis):
        g = matmul(basis.T, basis)
        x = matmul(inverse(g), matmul(basis.T, y))
        if np.any(matmul(basis, x) != y):
            raise NotASubspace("vector not in span of basis")
        return x
    x, *_ = np.linalg.lstsq(basis, y, rcond=None)
    if not np.allclose(basis @ x, y, atol=1e-7):
        raise NotASubspace("vector not in span of basis")
    return x


# ------------------------------------------------------------------ subspaces

@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of F^ambient_dim given by independent basis columns."""

    basis: np.ndarray

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def exact(self) -> bool:
        return is_exact(self.basis)

    @classmethod
    def span(cls, vectors: np.ndarray) -> "Subspace":
        return cls(column_basis(np.asarray(vectors)))

    @classmethod
    def zero(cls, n: int, exact: bool = True) -> "Subspace":
        return cls(zeros(n, 0, exact))

    @classmethod
    def full(cls, n: int, exact: bool = True) -> "Subspace":
        return cls(identity(n, exact))

    @classmethod
    def coordinate(cls, n: int, indices, exact: bool = True) -> "Subspace":
        """Span of the standard basis vectors e_i for i in ``indices``."""
        indices = sorted(indices)
        b = zeros(n, len(indices), exact)
        for k, i in enumerate(indices):
            b[i, k] = flint.fmpq(1) if exact else 1.0
        return cls(b)

    def contains(self, other: "Subspace") -> bool:
        """True iff ``other`` is a subspace of ``self`` (rank test)."""
        _check_ambient(self, other)
        if other.dim == 0:
            return True
        return rank(np.hstack([self.basis, other.basis])) == self.dim

    def contains_vectors(self, vectors: np.ndarray) -> bool:
        if vectors.shape[1] == 0:
            return True
        return rank(np.hstack([self.basis, like(vectors, self.exact)])) == self.dim

    def same_as(self, other: "Subspace") -> bool:
        return self.dim == other.dim and self.contains(other)

    def is_orthogonal_to(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return is_zero(matmul(self.basis.T, other.basis))

    def to_float(self) -> "Subspace":
        return Subspace.span(to_float(self.basis)) if self.exact else self

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"


def _check_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim:
        raise AmbientMismatch(f"ambient dims differ: {u.ambient_dim} vs {v.ambient_dim}")


def kernel_basis(m: np.ndarray) -> Subspace:
    return Subspace.span(null_matrix(m))


def image(m: np.ndarray, v: Subspace | None = None) -> Subspace:
    """Image of ``m``, or of the subspace ``v`` under ``m``."""
    if v is None:
        return Subspace.span(m)
    if v.ambient_dim != m.shape[1]:
        raise AmbientMismatch("subspace does not live in the domain of the matrix")
    return Subspace.span(matmul(m, v.basis))


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    return Subspace.span(np.hstack([u.basis, v.basis]))


def subspace_intersection(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(u.ambient_dim, u.exact)
    k = null_matrix(np.hstack([u.basis, -v.basis]))
    return Subspace.span(matmul(u.basis, k[: u.dim]))


def intersect_all(first: Subspace, *rest: Subspace) -> Subspace:
    return reduce(subspace_intersection, rest, first)


def orthogonal_complement(v: Subspace) -> Subspace:
    """Complement of ``v`` in its ambient space."""
    if v.dim == 0:
        return Subspace.full(v.ambient_dim, v.exact)
    return kernel_basis(v.basis.T)


def orthogonal_complement_in(w: Subspace, v: Subspace) -> Subspace:
    """The orthogonal complement of ``w`` inside ``v``; requires w <= v."""
    _check_ambient(w, v)
    if not v.contains(w):
        raise NotASubspace("first argument is not contained in the second")
    if w.dim == 0:
        return v
    c = null_matrix(matmul(w.basis.T, v.basis))
    return Subspace.span(matmul(v.basis, c))


def orthogonal_projection(v: Subspace) -> np.ndarray:
    """Matrix of the orthogonal projection onto ``v``: B (B^T B)^-1 B^T."""
    b = v.basis
    if v.dim == 0:
        return zeros(v.ambient_dim, v.ambient_dim, v.exact)
    if not v.exact:
        return b @ np.linalg.solve(b.T @ b, b.T)
    return matmul(matmul(b, inverse(matmul(b.T, b))), b.T)


def preimage(m: np.ndarray, v: Subspace) -> Subspace:
    """``{x : m x in v}``."""
    if v.ambient_dim != m.shape[0]:
        raise AmbientMismatch("subspace does not live in the codomain of the matrix")
    perp = orthogonal_complement(v)
    if perp.dim == 0:
        return Subspace.full(m.shape[1], v.exact)
    return kernel_basis(matmul(perp.basis.T, m))


def symmetric_eigendecomposition(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and orthonormal eigenvectors of a symmetric matrix."""
    a = to_float(m)
    if a.shape[0] != a.shape[1]:
        raise NotSymmetric(f"matrix of shape {a.shape} is not square")
    if a.size == 0:
        return np.zeros(0), np.zeros((0, 0))
    zero_tol, _ = tolerances()
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.T)) > zero_tol * scale * 10:
        raise NotSymmetric("matrix is not symmetric within tolerance")
    vals, vecs = np.linalg.eigh((a + a.T) / 2)
    return vals, vecs
