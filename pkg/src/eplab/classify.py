"""EP / hypo-EP classification and related constructions.

A square matrix is EP when its range equals the range of its adjoint
("Equal Projections"), and hypo-EP when its range is contained in the range
of the adjoint.  Both notions admit several equivalent formulations;
``classify`` evaluates every one of them independently and reports each
residual, because the mutual agreement of the routes is itself the main
correctness check.  Condition ids:

====  =========================================================
ep1   range equality                 ||P_R(A) - P_R(A*)||
ep2   commutation                    ||A A+ - A+ A||
ep3   null-space match with A+       ||P_N(A) - P_N(A+)||
ep4   null-space match with A*       ||P_N(A) - P_N(A*)||
ep5   complement of the null space   ||(I - P_N(A)) - P_R(A)||
ep6   carrier closure (range of A+)  ||P_R(A+) - P_R(A)||
ep7   orthogonal direct sum          ||P_R(A) + P_N(A) - I||
hypo1 null inclusion N(A) <= N(A*)   ||(I - P_N(A*)) P_N(A)||
hypo2 projector absorption           ||A+ A A A+ - A A+||
chain2 weaker absorption             ||A (A+)^2 A - A A+||
chain3 projector order A A+ <= A+ A  negative part of min eigenvalue
chain4 sampled norm inequality       max(||A A+ x|| - ||A+ A x||) over x
====  =========================================================

ep1..ep7 are equivalent, as are hypo1/hypo2; chain2..chain4 are one-way
consequences of hypo2 (and collapse back to the EP conditions in finite
dimension).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import (DEFAULT_TOL, SubspaceBasis, TolerancePolicy, adjoint,
                   as_matrix, null_basis, numerical_rank, op_norm, projector,
                   range_basis, subspace_equal, subspace_included, svd)
from .errors import (ConvergenceFailure, DimensionMismatch, NotSquare,
                     SolveFailure, SourceNotEP, SourceNotHypoEP)
from .pinv import pinv, pinv_from_factors

# Fixed seed for the sampled conditions so classification is a pure function.
_SAMPLE_SEED = 20240711
_N_SAMPLES = 100


class ConditionCheck(NamedTuple):
    condition_id: str
    residual: float
    passed: bool


@dataclass(frozen=True)
class ClassificationReport:
    """Outcome of the full EP / hypo-EP condition panel for one matrix."""

    is_ep: bool
    is_hypo_ep: bool
    rank: int
    gamma: float
    conditions: tuple[ConditionCheck, ...]

    def condition(self, condition_id: str) -> ConditionCheck:
        for check in self.conditions:
            if check.condition_id == condition_id:
                return check
        raise KeyError(condition_id)


def gamma(a, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """Reduced minimum modulus: smallest singular value above the rank cut.

    Equals ``inf ||A x||`` over unit vectors in the carrier (the orthogonal
    complement of the null space) and ``1 / ||A+||``.  By convention 0 for a
    numerically rank-0 matrix, keeping reports free of infinities.  Uses the
    values-only SVD driver, which reproduces diagonal entries exactly.
    """
    arr = as_matrix(a)
    try:
        sigma = np.linalg.svd(arr, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc
    kept = sigma[sigma > tol.rank_threshold(sigma, arr.shape)]
    return float(kept[-1]) if len(kept) else 0.0


def modulus(a) -> np.ndarray:
    """Hermitian PSD square root of ``A* A``.

    Computed from the singular decomposition of ``A`` itself, which is the
    spectral decomposition of ``A* A`` with exactly ``A``'s singular values;
    this keeps ``N(|A|) = N(A)`` at the rank-threshold level instead of
    inflating tiny eigenvalues through the squared Gram matrix.
    """
    factors = svd(a)
    m, n = factors.shape
    s_full = np.zeros(n)
    s_full[: min(m, n)] = factors.sigma
    root = (factors.v * s_full) @ factors.v.conj().T
    return (root + root.conj().T) / 2.0


def _sampled_norm_violation(aad: np.ndarray, ada: np.ndarray, n: int) -> float:
    rng = np.random.default_rng(_SAMPLE_SEED)
    x = rng.standard_normal((n, _N_SAMPLES)) + 1j * rng.standard_normal((n, _N_SAMPLES))
    lhs = np.linalg.norm(aad @ x, axis=0)
    rhs = np.linalg.norm(ada @ x, axis=0)
    return float(np.max(lhs - rhs, initial=0.0))


def classify(a, tol: TolerancePolicy = DEFAULT_TOL) -> ClassificationReport:
    """Evaluate every EP and hypo-EP condition; no short-circuiting.

    All seven EP formulations and both hypo-EP formulations are computed
    independently even after a failure, since disagreement between the
    routes indicates a tolerance or conditioning problem worth surfacing.
    ``is_ep`` is the conjunction of ep1..ep7, ``is_hypo_ep`` of
    hypo1/hypo2.
    """
    arr = as_matrix(a)
    m, n = arr.shape
    if m != n:
        raise NotSquare(f"EP classification requires a square matrix, got {arr.shape}")

    factors = svd(arr)
    r = numerical_rank(factors, tol)
    gam = gamma(arr, tol)
    a_dag = pinv_from_factors(factors, tol)
    star = adjoint(arr)

    rng_a = SubspaceBasis(n, factors.u[:, :r])
    nul_a = SubspaceBasis(n, factors.v[:, r:])
    rng_star = range_basis(star, tol)
    nul_star = null_basis(star, tol)
    rng_dag = range_basis(a_dag, tol)
    nul_dag = null_basis(a_dag, tol)

    eye = np.eye(n, dtype=np.complex128)
    p_rng = projector(rng_a)
    p_nul = projector(nul_a)
    aad = arr @ a_dag
    ada = a_dag @ arr

    sub = tol.subspace_tol
    checks = []

    def residual_check(condition_id, residual, threshold):
        checks.append(ConditionCheck(condition_id, float(residual), residual <= threshold))

    residual_check("ep1", subspace_equal(rng_a, rng_star, tol).residual, sub)
    residual_check("ep2", op_norm(aad - ada), sub)
    residual_check("ep3", subspace_equal(nul_a, nul_dag, tol).residual, sub)
    residual_check("ep4", subspace_equal(nul_a, nul_star, tol).residual, sub)
    residual_check("ep5", op_norm((eye - p_nul) - p_rng), sub)
    residual_check("ep6", subspace_equal(rng_dag, rng_a, tol).residual, sub)
    residual_check("ep7", op_norm(p_rng + p_nul - eye), sub)

    residual_check("hypo1", subspace_included(nul_a, nul_star, tol).residual, sub)
    residual_check("hypo2", op_norm(ada @ arr @ a_dag - aad), sub)
    residual_check("chain2", op_norm(arr @ a_dag @ a_dag @ arr - aad), sub)

    diff = ada - aad
    herm = (diff + diff.conj().T) / 2.0
    lam_min = float(np.linalg.eigvalsh(herm)[0])
    checks.append(ConditionCheck("chain3", max(0.0, -lam_min), lam_min >= -tol.psd_tol))

    residual_check("chain4", _sampled_norm_violation(aad, ada, n), sub)

    by_id = {c.condition_id: c for c in checks}
    is_ep = all(by_id[f"ep{i}"].passed for i in range(1, 8))
    is_hypo_ep = by_id["hypo1"].passed and by_id["hypo2"].passed

    return ClassificationReport(is_ep=is_ep, is_hypo_ep=is_hypo_ep, rank=r,
                                gamma=gam, conditions=tuple(checks))


def ep_closure_suite(a, tol: TolerancePolicy = DEFAULT_TOL) -> list[tuple[str, bool]]:
    """Classify the operators the EP property propagates to.

    For EP input ``A`` this returns the EP verdicts of ``A*``, ``A A*``,
    ``A* A`` and ``|A|``; all four must come back EP.
    """
    arr = as_matrix(a)
    if not classify(arr, tol).is_ep:
        raise SourceNotEP("closure suite requires an EP input")
    star = adjoint(arr)
    members = (
        ("adjoint", star),
        ("aa_star", arr @ star),
        ("a_star_a", star @ arr),
        ("modulus", modulus(arr)),
    )
    return [(name, classify(mat, tol).is_ep) for name, mat in members]


@dataclass(frozen=True)
class FactorC:
    """Square factor with ``A* = A C`` and ``C`` invertible."""

    c: np.ndarray
    residual_factorization: float
    bijective: bool


def construct_factor_c(a, tol: TolerancePolicy = DEFAULT_TOL) -> FactorC:
    """Build an invertible ``C`` with ``A* = A C`` for an EP matrix.

    Each vector splits as ``y = y1 + y2`` with ``y1`` in the carrier of
    ``A*`` and ``y2`` in ``N(A*)``.  Solving ``A x = A* y`` on the carrier
    gives the minimal-norm component ``x1 = A+ A* y``, and ``C y = x1 + y2``
    works because ``A`` kills ``y2`` (EP makes the two null spaces equal).
    In matrix form ``C = A+ A* + (I - A+ A)``: it preserves the splitting
    of the space into range and null space, acting invertibly on each part.
    The residual check is authoritative; the formula is not trusted blindly.
    """
    arr = as_matrix(a)
    m, n = arr.shape
    if m != n:
        raise NotSquare(f"factor construction requires a square matrix, got {arr.shape}")
    if not classify(arr, tol).is_ep:
        raise SourceNotEP("factor construction requires an EP input")

    a_dag = pinv(arr, tol)
    c = a_dag @ adjoint(arr) + (np.eye(n, dtype=np.complex128) - a_dag @ arr)
    residual = op_norm(adjoint(arr) - arr @ c)
    bijective = numerical_rank(svd(c), tol) == n

    scale = max(1.0, op_norm(arr))
    if not bijective or residual > 1e-9 * scale:
        raise SolveFailure(
            "carrier-restricted solve is numerically singular "
            f"(residual={residual:.3e}, bijective={bijective}); gamma may be ~0")
    return FactorC(c=c, residual_factorization=float(residual), bijective=True)


def majorization_witness(a, x, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """Constant ``k`` with ``|<A x, y>| <= k ||A y||`` for all ``y``.

    For hypo-EP ``A`` the vector ``A x`` lies in the range of ``A*``, so the
    minimal-norm solution ``z`` of ``A* z = A x`` exists and ``k = ||z||``
    works; the bound is verified on a fixed batch of random unit vectors.
    Returns 0 when ``x`` is in the null space.
    """
    arr = as_matrix(a)
    m, n = arr.shape
    if m != n:
        raise NotSquare(f"majorization witness requires a square matrix, got {arr.shape}")
    if not classify(arr, tol).is_hypo_ep:
        raise SourceNotHypoEP("majorization witness requires a hypo-EP input")

    vec = np.asarray(x, dtype=np.complex128).reshape(-1)
    if vec.shape[0] != n:
        raise DimensionMismatch(
            f"vector length {vec.shape[0]} does not match matrix size {n}")

    star = adjoint(arr)
    ax = arr @ vec
    z = pinv(star, tol) @ ax
    k = float(np.linalg.norm(z))

    scale = max(1.0, op_norm(arr)) * max(1.0, float(np.linalg.norm(vec)))
    if np.linalg.norm(star @ z - ax) > max(tol.subspace_tol, 1e-9) * scale:
        raise SolveFailure("A* z = A x is not solvable at tolerance; input may not be hypo-EP")

    rng = np.random.default_rng(_SAMPLE_SEED)
    ys = rng.standard_normal((n, _N_SAMPLES)) + 1j * rng.standard_normal((n, _N_SAMPLES))
    ys /= np.linalg.norm(ys, axis=0)
    lhs = np.abs(ys.conj().T @ ax)
    rhs = (k + tol.subspace_tol) * np.linalg.norm(arr @ ys, axis=0)
    if np.any(lhs > rhs + tol.subspace_tol * scale):
        raise SolveFailure("sampled majorization inequality failed; tolerance too tight")
    return k
