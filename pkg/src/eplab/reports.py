"""Report documents: JSON-safe encoding and lossless decoding of results.

Every CLI invocation wraps its typed report in a document carrying the tool
version, a content digest of the inputs and the tolerance policy in effect.
Documents round-trip field-for-field through ``json``.
"""

from __future__ import annotations

import json

from . import __version__
from .classify import ClassificationReport, ConditionCheck
from .core import TolerancePolicy
from .douglas import DouglasReport
from .matio import matrix_from_json_dict, matrix_to_json_dict
from .perturb import PerturbationReport
from .pinv import PenroseReport


def tolerance_to_dict(tol: TolerancePolicy) -> dict:
    return {
        "rank_rel": tol.rank_rel,
        "rank_abs": tol.rank_abs,
        "subspace_tol": tol.subspace_tol,
        "psd_tol": tol.psd_tol,
    }


def tolerance_from_dict(data: dict) -> TolerancePolicy:
    return TolerancePolicy(
        rank_rel=data.get("rank_rel"),
        rank_abs=data.get("rank_abs"),
        subspace_tol=float(data.get("subspace_tol", 1e-8)),
        psd_tol=float(data.get("psd_tol", 1e-9)),
    )


def classification_to_dict(rep: ClassificationReport) -> dict:
    return {
        "is_ep": bool(rep.is_ep),
        "is_hypo_ep": bool(rep.is_hypo_ep),
        "rank": int(rep.rank),
        "gamma": float(rep.gamma),
        "conditions": [
            {"id": c.condition_id, "residual": float(c.residual), "passed": bool(c.passed)}
            for c in rep.conditions
        ],
    }


def classification_from_dict(data: dict) -> ClassificationReport:
    conditions = tuple(
        ConditionCheck(c["id"], float(c["residual"]), bool(c["passed"]))
        for c in data["conditions"]
    )
    return ClassificationReport(is_ep=bool(data["is_ep"]),
                                is_hypo_ep=bool(data["is_hypo_ep"]),
                                rank=int(data["rank"]), gamma=float(data["gamma"]),
                                conditions=conditions)


def penrose_to_dict(rep: PenroseReport) -> dict:
    out = {k: float(v) for k, v in rep.residuals().items()}
    out["passed"] = bool(rep.passed)
    return out


def penrose_from_dict(data: dict) -> PenroseReport:
    return PenroseReport(
        residual_a_dag_a_a_dag=float(data["residual_a_dag_a_a_dag"]),
        residual_a_a_dag_a=float(data["residual_a_a_dag_a"]),
        residual_sym_a_dag_a=float(data["residual_sym_a_dag_a"]),
        residual_sym_a_a_dag=float(data["residual_sym_a_a_dag"]),
        residual_proj_range=float(data["residual_proj_range"]),
        residual_proj_carrier=float(data["residual_proj_carrier"]),
        passed=bool(data["passed"]),
    )


def douglas_to_dict(rep: DouglasReport) -> dict:
    return {
        "range_included": bool(rep.range_included),
        "residual_range": float(rep.residual_range),
        "factor_c": None if rep.factor_c is None else matrix_to_json_dict(rep.factor_c),
        "residual_bc_a": None if rep.residual_bc_a is None else float(rep.residual_bc_a),
        "bound_k": None if rep.bound_k is None else float(rep.bound_k),
        "contraction_ok": None if rep.contraction_ok is None else bool(rep.contraction_ok),
    }


def douglas_from_dict(data: dict) -> DouglasReport:
    factor = data.get("factor_c")
    return DouglasReport(
        range_included=bool(data["range_included"]),
        residual_range=float(data["residual_range"]),
        factor_c=None if factor is None else matrix_from_json_dict(factor),
        residual_bc_a=None if data.get("residual_bc_a") is None else float(data["residual_bc_a"]),
        bound_k=None if data.get("bound_k") is None else float(data["bound_k"]),
        contraction_ok=None if data.get("contraction_ok") is None else bool(data["contraction_ok"]),
    )


_PERTURBATION_FLOATS = ("hyp_norm_product", "hyp_b_adag_a", "hyp_a_adag_b",
                        "residual_null_equal", "residual_range_equal",
                        "gamma_a", "gamma_perturbed", "norm_b")
_PERTURBATION_BOOLS = ("hypotheses_pass", "concl_ep", "concl_null_equal",
                       "concl_range_equal", "concl_gamma_bound")


def perturbation_to_dict(rep: PerturbationReport) -> dict:
    out: dict = {name: float(getattr(rep, name)) for name in _PERTURBATION_FLOATS}
    out.update({name: bool(getattr(rep, name)) for name in _PERTURBATION_BOOLS})
    return out


def perturbation_from_dict(data: dict) -> PerturbationReport:
    kwargs: dict = {name: float(data[name]) for name in _PERTURBATION_FLOATS}
    kwargs.update({name: bool(data[name]) for name in _PERTURBATION_BOOLS})
    return PerturbationReport(**kwargs)


_ENCODERS = {
    "classification": classification_to_dict,
    "penrose": penrose_to_dict,
    "douglas": douglas_to_dict,
    "perturbation": perturbation_to_dict,
}

_DECODERS = {
    "classification": classification_from_dict,
    "penrose": penrose_from_dict,
    "douglas": douglas_from_dict,
    "perturbation": perturbation_from_dict,
}


def make_document(kind: str, report, input_digest: str, tol: TolerancePolicy) -> dict:
    """Wrap a typed report (or an already JSON-safe payload) in a document."""
    payload = _ENCODERS[kind](report) if kind in _ENCODERS else report
    return {
        "tool_version": __version__,
        "input_digest": input_digest,
        "tolerance": tolerance_to_dict(tol),
        "kind": kind,
        "report": payload,
    }


def decode_document(doc: dict):
    """Recover (kind, typed report, digest, tolerance) from a document."""
    kind = doc["kind"]
    payload = doc["report"]
    report = _DECODERS[kind](payload) if kind in _DECODERS else payload
    return kind, report, doc["input_digest"], tolerance_from_dict(doc["tolerance"])


def dump_document(doc: dict) -> str:
    """Deterministic JSON rendering (sorted keys, two-space indent)."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
