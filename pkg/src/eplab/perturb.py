"""Stability of the EP property under structured bounded perturbations.

An EP matrix ``A`` stays EP under ``A + B`` whenever ``B`` is small against
the pseudoinverse (``||B|| ||A+|| < 1``) and is compressed onto the range of
``A`` from both sides (``B A+ A = B`` and ``A A+ B = B``).  Under those
hypotheses the null space and range are preserved exactly and the reduced
minimum modulus drops by at most ``||B||``.  ``check_perturbation`` measures
the hypotheses and all four conclusions; ``generate_admissible`` builds
perturbations satisfying the hypotheses by construction for testing.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .core import (DEFAULT_TOL, TolerancePolicy, as_matrix, null_basis,
                   op_norm, range_basis, subspace_equal)
from .errors import DimensionMismatch, SourceNotEP
from .classify import classify, gamma
from .pinv import pinv


@dataclass(frozen=True)
class PerturbationReport:
    """Hypothesis residuals and conclusion checks for a pair ``(A, B)``.

    Conclusions are evaluated regardless of whether the hypotheses hold,
    since falsification data is useful when probing sharpness.  When the
    hypotheses pass, all four conclusion flags must be true; a violation is
    a tolerance failure and is reported loudly via ``warnings``.
    """

    hyp_norm_product: float
    hyp_b_adag_a: float
    hyp_a_adag_b: float
    hypotheses_pass: bool
    concl_ep: bool
    concl_null_equal: bool
    residual_null_equal: float
    concl_range_equal: bool
    residual_range_equal: float
    concl_gamma_bound: bool
    gamma_a: float
    gamma_perturbed: float
    norm_b: float


def check_perturbation(a, b, tol: TolerancePolicy = DEFAULT_TOL) -> PerturbationReport:
    """Validate the perturbation hypotheses for ``(A, B)`` and the conclusions.

    ``A`` must classify EP (SourceNotEP otherwise) and ``B`` must have the
    same shape.  The compression hypotheses are full matrix identities here
    because finite sections have total domains.
    """
    arr_a = as_matrix(a)
    arr_b = as_matrix(b)
    if arr_a.shape != arr_b.shape:
        raise DimensionMismatch(f"shapes differ: {arr_a.shape} vs {arr_b.shape}")
    if not classify(arr_a, tol).is_ep:
        raise SourceNotEP("perturbation analysis requires an EP base matrix")

    a_dag = pinv(arr_a, tol)
    norm_b = op_norm(arr_b)
    hyp_norm_product = norm_b * op_norm(a_dag)
    hyp_b_adag_a = op_norm(arr_b @ (a_dag @ arr_a) - arr_b)
    hyp_a_adag_b = op_norm((arr_a @ a_dag) @ arr_b - arr_b)

    scale_b = max(1.0, norm_b)
    hypotheses_pass = (hyp_norm_product < 1.0
                       and hyp_b_adag_a <= tol.subspace_tol * scale_b
                       and hyp_a_adag_b <= tol.subspace_tol * scale_b)

    total = arr_a + arr_b
    concl_ep = classify(total, tol).is_ep
    null_cmp = subspace_equal(null_basis(total, tol), null_basis(arr_a, tol), tol)
    range_cmp = subspace_equal(range_basis(total, tol), range_basis(arr_a, tol), tol)

    gamma_a = gamma(arr_a, tol)
    gamma_perturbed = gamma(total, tol)
    bound_slack = 1e-9 * max(1.0, op_norm(arr_a))
    concl_gamma_bound = gamma_perturbed >= gamma_a - norm_b - bound_slack

    report = PerturbationReport(
        hyp_norm_product=float(hyp_norm_product),
        hyp_b_adag_a=float(hyp_b_adag_a),
        hyp_a_adag_b=float(hyp_a_adag_b),
        hypotheses_pass=hypotheses_pass,
        concl_ep=concl_ep,
        concl_null_equal=null_cmp.ok,
        residual_null_equal=null_cmp.residual,
        concl_range_equal=range_cmp.ok,
        residual_range_equal=range_cmp.residual,
        concl_gamma_bound=concl_gamma_bound,
        gamma_a=float(gamma_a),
        gamma_perturbed=float(gamma_perturbed),
        norm_b=float(norm_b),
    )
    if hypotheses_pass and not (concl_ep and null_cmp.ok and range_cmp.ok
                                and concl_gamma_bound):
        warnings.warn(
            "perturbation hypotheses hold but a conclusion failed; "
            f"this indicates a tolerance problem: {report}", stacklevel=2)
    return report


def generate_admissible(a, scale: float, seed: int) -> np.ndarray:
    """Seeded perturbation with ``||B|| ||A+|| = scale`` and exact compressions.

    ``B = P M P`` where ``P = A A+`` projects onto the range of ``A`` (equal
    to ``A+ A`` for EP input) and ``M`` is a seeded random matrix; both
    compression hypotheses then hold by construction.  Returns the zero
    matrix when the compression degenerates (rank-0 input or a zero draw).
    """
    arr = as_matrix(a)
    if arr.shape[0] != arr.shape[1] or not classify(arr).is_ep:
        raise SourceNotEP("admissible perturbations are generated for EP matrices only")
    if not 0.0 < scale < 1.0:
        raise ValueError(f"scale must lie in (0, 1), got {scale}")

    a_dag = pinv(arr)
    dag_norm = op_norm(a_dag)
    if dag_norm == 0.0:
        return np.zeros_like(arr)

    p = arr @ a_dag
    p = (p + p.conj().T) / 2.0
    rng = np.random.default_rng(seed)
    n = arr.shape[0]
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    b = p @ m @ p
    norm_b = op_norm(b)
    if norm_b == 0.0:
        return np.zeros_like(arr)
    return b * (scale / (norm_b * dag_norm))
