"""Dense complex linear-algebra substrate: SVD, numerical rank, subspaces.

Matrices are plain numpy arrays (dtype complex128, shape (m, n)); real input
embeds.  Subspaces are carried as orthonormal bases and compared through
their orthogonal projectors in the 2-norm, so set-level statements such as
range equality or null-space inclusion reduce to residuals tested against a
:class:`TolerancePolicy`.  Every function here is pure: no hidden state, no
mutation of inputs, safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, NonFinite

_EPS = float(np.finfo(np.float64).eps)


def as_matrix(a) -> np.ndarray:
    """Coerce input to a 2-D complex128 array, rejecting NaN/Inf entries."""
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    m, n = arr.shape
    if m < 1 or n < 1:
        raise ValueError(f"matrix dimensions must be positive, got {arr.shape}")
    arr = arr.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(arr)):
        raise NonFinite("matrix contains NaN or Inf entries")
    return arr


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class TolerancePolicy:
    """Thresholds governing rank decisions and residual-based subspace tests.

    ``rank_rel`` scales the largest singular value; ``rank_abs`` is an
    absolute cutoff, mutually exclusive with ``rank_rel``.  With neither set,
    the threshold is ``max(m, n) * eps * sigma_max``, the standard
    pseudoinverse truncation rule (deterministic and scale invariant).
    ``subspace_tol`` bounds projector-distance residuals, ``psd_tol`` is the
    floor for minimum-eigenvalue positivity checks.
    """

    rank_rel: float | None = None
    rank_abs: float | None = None
    subspace_tol: float = 1e-8
    psd_tol: float = 1e-9

    def __post_init__(self):
        if self.rank_rel is not None and self.rank_abs is not None:
            raise ValueError("rank_rel and rank_abs are mutually exclusive")
        for name in ("rank_rel", "rank_abs", "subspace_tol", "psd_tol"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ValueError(f"{name} must be positive, got {value!r}")

    def rank_threshold(self, sigma: np.ndarray, shape: tuple[int, int]) -> float:
        """Resolve the singular-value cutoff for a matrix of the given shape."""
        if self.rank_abs is not None:
            return float(self.rank_abs)
        smax = float(sigma[0]) if len(sigma) else 0.0
        factor = self.rank_rel if self.rank_rel is not None else max(shape) * _EPS
        return float(factor) * smax


DEFAULT_TOL = TolerancePolicy()


@dataclass(frozen=True)
class SvdFactors:
    """Full decomposition ``a = u @ diag(sigma) @ v.conj().T``.

    ``u`` is m-by-m unitary, ``v`` is n-by-n unitary and ``sigma`` holds the
    min(m, n) singular values sorted non-increasing.
    """

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        m, n = self.u.shape[0], self.v.shape[0]
        if self.u.shape != (m, m) or self.v.shape != (n, n):
            raise ValueError("u and v must be square")
        if len(self.sigma) != min(m, n):
            raise ValueError("sigma must have min(m, n) entries")
        s = np.asarray(self.sigma)
        if len(s) and (np.any(s < 0) or np.any(s[:-1] < s[1:]) or not np.all(np.isfinite(s))):
            raise ValueError("sigma must be non-negative, finite and non-increasing")

    @property
    def shape(self) -> tuple[int, int]:
        return self.u.shape[0], self.v.shape[0]


def svd(a) -> SvdFactors:
    """Full SVD; raises NonFinite on bad entries, ConvergenceFailure from LAPACK."""
    arr = as_matrix(a)
    try:
        u, s, vh = np.linalg.svd(arr, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc
    return SvdFactors(u=_readonly(u), sigma=_readonly(s), v=_readonly(vh.conj().T))


def numerical_rank(factors: SvdFactors, tol: TolerancePolicy = DEFAULT_TOL) -> int:
    """Number of singular values strictly above the resolved threshold."""
    if len(factors.sigma) == 0:
        return 0
    threshold = tol.rank_threshold(factors.sigma, factors.shape)
    return int(np.count_nonzero(factors.sigma > threshold))


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal basis of a subspace of C^ambient_dim.

    ``basis`` is ambient_dim-by-k with orthonormal columns; k = 0 encodes the
    zero subspace via an empty basis (never a null value).
    """

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        if self.basis.shape[0] != self.ambient_dim:
            raise ValueError("basis rows must equal ambient_dim")
        k = self.basis.shape[1]
        if k > self.ambient_dim:
            raise ValueError("subspace dimension exceeds ambient dimension")
        if k:
            gram = self.basis.conj().T @ self.basis
            if np.linalg.norm(gram - np.eye(k), 2) > 1e-10:
                raise ValueError("basis columns are not orthonormal")

    @property
    def k(self) -> int:
        return self.basis.shape[1]


class SubspaceComparison(NamedTuple):
    ok: bool
    residual: float


def range_basis(a, tol: TolerancePolicy = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of the column space (leading left singular vectors)."""
    factors = svd(a)
    r = numerical_rank(factors, tol)
    return SubspaceBasis(factors.shape[0], _readonly(factors.u[:, :r]))


def null_basis(a, tol: TolerancePolicy = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of the null space (trailing right singular vectors)."""
    factors = svd(a)
    r = numerical_rank(factors, tol)
    return SubspaceBasis(factors.shape[1], _readonly(factors.v[:, r:]))


def projector(s: SubspaceBasis) -> np.ndarray:
    """Orthogonal projector ``basis @ basis*``; Hermitian and idempotent."""
    return s.basis @ s.basis.conj().T


def subspace_equal(p: SubspaceBasis, q: SubspaceBasis,
                   tol: TolerancePolicy = DEFAULT_TOL) -> SubspaceComparison:
    """Projector-distance equality test: ``||P_p - P_q||_2 <= subspace_tol``."""
    if p.ambient_dim != q.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {p.ambient_dim} vs {q.ambient_dim}")
    residual = op_norm(projector(p) - projector(q))
    return SubspaceComparison(residual <= tol.subspace_tol, residual)


def subspace_included(p: SubspaceBasis, q: SubspaceBasis,
                      tol: TolerancePolicy = DEFAULT_TOL) -> SubspaceComparison:
    """Inclusion test p <= q via ``||(I - P_q) P_p||_2 <= subspace_tol``."""
    if p.ambient_dim != q.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {p.ambient_dim} vs {q.ambient_dim}")
    eye = np.eye(q.ambient_dim, dtype=np.complex128)
    residual = op_norm((eye - projector(q)) @ projector(p))
    return SubspaceComparison(residual <= tol.subspace_tol, residual)


def adjoint(a) -> np.ndarray:
    """Conjugate transpose; exact involution."""
    return as_matrix(a).conj().T


def op_norm(a) -> float:
    """Operator 2-norm, the largest singular value."""
    arr = as_matrix(a)
    try:
        s = np.linalg.svd(arr, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc
    return float(s[0]) if len(s) else 0.0
