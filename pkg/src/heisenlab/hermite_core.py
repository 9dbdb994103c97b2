"""Scaled Hermite basis, ladder operators and spectral projections.

All operators on L^2(R^n) are represented by their matrices in the
truncated scaled Hermite basis {Phi_mu^lam : |mu| <= K}, enumerated in
graded lexicographic order.  The scaling convention is

    Phi_mu^lam(xi) = |lam|^{n/4} Phi_mu(|lam|^{1/2} xi),

and the ladder operators A_j = d/dxi_j + |lam| xi_j,
A_j* = -d/dxi_j + |lam| xi_j act as

    A_j  Phi_mu^lam = sqrt(2 mu_j |lam|)       Phi_{mu-e_j}^lam,
    A_j* Phi_mu^lam = sqrt((2 mu_j + 2)|lam|)  Phi_{mu+e_j}^lam,

which is the normalization forced by the differential expressions acting
on unit-normalized Hermite functions (validated by quadrature in the
test suite).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

MAX_DEGREE = 200  # recurrence-stable per-coordinate degree bound


class DegreeError(ValueError):
    """Hermite degree outside the recurrence-stable range."""


@dataclass(frozen=True)
class TruncatedBasis:
    """Enumeration of Hermite multi-indices {mu in N^n : |mu| <= K}.

    The order is graded lexicographic (total degree first, then lex) and
    is stable across the process; matrix serialization relies on it.
    """

    dim_n: int
    cutoff_K: int
    index_order: str = "graded-lex"
    _indices: tuple = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        if self.dim_n < 1:
            raise ValueError("spatial dimension must be >= 1")
        if not 0 <= self.cutoff_K <= MAX_DEGREE:
            raise DegreeError(f"cutoff {self.cutoff_K} outside [0, {MAX_DEGREE}]")
        if self.index_order != "graded-lex":
            raise ValueError("only graded-lex enumeration is supported")
        idx = []
        for deg in range(self.cutoff_K + 1):
            for mu in _compositions(deg, self.dim_n):
                idx.append(mu)
        object.__setattr__(self, "_indices", tuple(idx))

    @property
    def indices(self):
        return self._indices

    @property
    def size(self):
        return len(self._indices)

    def position(self, mu) -> int:
        mu = tuple(int(m) for m in mu)
        try:
            return self._pos()[mu]
        except KeyError:
            raise KeyError(f"multi-index {mu} not in truncation |mu| <= {self.cutoff_K}")

    def _pos(self):
        cache = getattr(self, "_pos_cache", None)
        if cache is None:
            cache = {mu: i for i, mu in enumerate(self._indices)}
            object.__setattr__(self, "_pos_cache", cache)
        return cache

    def degrees(self):
        """Array of total degrees |mu| in enumeration order."""
        return np.array([sum(mu) for mu in self._indices])


def _compositions(total, n):
    """Weak compositions of `total` into n parts, lexicographic."""
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, n - 1):
            yield (first,) + rest


@dataclass
class OperatorMatrix:
    """Dense matrix of an operator in a TruncatedBasis at a fixed lambda.

    `band` marks how many top total-degree layers are unreliable because
    the operator raises degree out of the truncation; identity-type tests
    restrict to rows/columns with |mu| <= K - band.
    """

    basis: TruncatedBasis
    lam: float
    entries: np.ndarray
    band: int = 0

    def __post_init__(self):
        if self.lam == 0:
            raise ValueError("lambda must be nonzero")
        self.entries = np.asarray(self.entries, dtype=complex)
        if self.entries.shape != (self.basis.size, self.basis.size):
            raise ValueError("entry matrix does not match basis size")
        if not np.all(np.isfinite(self.entries)):
            raise ValueError("non-finite matrix entries")

    def interior_mask(self, extra: int = 0):
        """Boolean mask of indices with |mu| <= K - band - extra."""
        keep = self.basis.cutoff_K - self.band - extra
        return self.basis.degrees() <= keep

    def restricted(self, extra: int = 0):
        """Entries restricted to the interior block (copy)."""
        m = self.interior_mask(extra)
        return self.entries[np.ix_(m, m)]

    def copy_with(self, entries, band=None):
        return OperatorMatrix(self.basis, self.lam, entries,
                              self.band if band is None else band)


def identity_matrix(lam, basis) -> OperatorMatrix:
    return OperatorMatrix(basis, lam, np.eye(basis.size, dtype=complex))


def hermite_batch(K, lam, xi):
    """Values of the 1-D scaled Hermite functions, orders 0..K.

    Returns array of shape (K+1,) + xi.shape.  Three-term recurrence on
    the normalized functions; stable for K <= MAX_DEGREE.
    """
    if K > MAX_DEGREE:
        raise DegreeError(f"degree {K} beyond stable range {MAX_DEGREE}")
    xi = np.asarray(xi, dtype=float)
    s = np.sqrt(abs(lam))
    x = s * xi
    out = np.zeros((K + 1,) + x.shape)
    out[0] = np.pi ** -0.25 * np.exp(-x ** 2 / 2)
    if K >= 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for m in range(2, K + 1):
        out[m] = np.sqrt(2.0 / m) * x * out[m - 1] - np.sqrt((m - 1) / m) * out[m - 2]
    return abs(lam) ** 0.25 * out


def hermite_eval(mu, lam, xi):
    """Phi_mu^lam at a point xi in R^n (mu a multi-index, xi array-like)."""
    mu = tuple(int(m) for m in mu)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    if any(m < 0 or m > MAX_DEGREE for m in mu):
        raise DegreeError(f"multi-index {mu} outside stable range")
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if xi.shape[-1] != len(mu) and len(mu) == 1:
        xi = xi.reshape(-1, 1)
    val = 1.0
    for j, m in enumerate(mu):
        val = val * hermite_batch(m, lam, xi[..., j])[m]
    return val if val.ndim else float(val)


def ladder_matrix(j, lam, kind, basis) -> OperatorMatrix:
    """Matrix of A_j(lam) (kind='A') or A_j*(lam) (kind='A*'), 1-based j.

    Raising maps the top degree layer out of the truncation; the overflow
    is zeroed and the matrix carries band=1.
    """
    if not 1 <= j <= basis.dim_n:
        raise ValueError(f"coordinate j={j} outside 1..{basis.dim_n}")
    if kind not in ("A", "A*"):
        raise ValueError("kind must be 'A' or 'A*'")
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    al = abs(lam)
    n = basis.size
    M = np.zeros((n, n), dtype=complex)
    pos = basis.position
    for i, mu in enumerate(basis.indices):
        mj = mu[j - 1]
        if kind == "A":
            if mj >= 1:
                nu = mu[:j - 1] + (mj - 1,) + mu[j:]
                M[pos(nu), i] = np.sqrt(2 * mj * al)
        else:
            nu = mu[:j - 1] + (mj + 1,) + mu[j:]
            if sum(nu) <= basis.cutoff_K:
                M[pos(nu), i] = np.sqrt((2 * mj + 2) * al)
    return OperatorMatrix(basis, lam, M, band=1)


def number_matrix(lam, basis) -> OperatorMatrix:
    """H(lam) = sum_j (A_j* A_j + A_j A_j*)/2, diagonal (2|mu|+n)|lam|."""
    d = (2 * basis.degrees() + basis.dim_n) * abs(lam)
    return OperatorMatrix(basis, lam, np.diag(d.astype(complex)))


def spectral_projections(lam, basis):
    """List of (k, P_k(lam)) for k = 0..K; P_k diagonal 0/1 over |mu| = k."""
    deg = basis.degrees()
    out = []
    for k in range(basis.cutoff_K + 1):
        P = np.diag((deg == k).astype(complex))
        out.append((k, OperatorMatrix(basis, lam, P)))
    return out


def dyadic_projection(N, lam, basis) -> OperatorMatrix:
    """chi_N(lam): projection onto modes with 2^N <= (2k+n)|lam| < 2^{N+1}."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    ev = (2 * basis.degrees() + basis.dim_n) * abs(lam)
    sel = (ev >= 2.0 ** N) & (ev < 2.0 ** (N + 1))
    return OperatorMatrix(basis, lam, np.diag(sel.astype(complex)))


def dyadic_band_indices(N, lam, basis):
    """Degrees k selected by chi_N(lam); may be empty."""
    ks = np.arange(basis.cutoff_K + 1)
    ev = (2 * ks + basis.dim_n) * abs(lam)
    return ks[(ev >= 2.0 ** N) & (ev < 2.0 ** (N + 1))]


def xi_grad_matrix(lam, basis) -> OperatorMatrix:
    """Matrix of xi . grad = sum_j xi_j d/dxi_j from the ladder algebra.

    Uses xi_j = (A_j + A_j*)/(2|lam|) and d/dxi_j = (A_j - A_j*)/2; the
    product couples mu only to mu and mu +- 2 e_j.  Built from truncated
    ladder matrices, so the top two degree layers carry truncation
    artifacts (band=2).
    """
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    n = basis.size
    M = np.zeros((n, n), dtype=complex)
    for j in range(1, basis.dim_n + 1):
        A = ladder_matrix(j, lam, "A", basis).entries
        As = ladder_matrix(j, lam, "A*", basis).entries
        M += (A + As) @ (A - As) / (4 * abs(lam))
    return OperatorMatrix(basis, lam, M, band=2)
