import json

import numpy as np

import eplab
from eplab import (TolerancePolicy, check_perturbation, classify,
                   douglas_factorize, penrose_verify, pinv)
from eplab.reports import (decode_document, dump_document, make_document,
                           tolerance_from_dict, tolerance_to_dict)

from conftest import random_complex


def roundtrip(doc):
    return json.loads(dump_document(doc))


def test_tolerance_round_trip():
    tol = TolerancePolicy(rank_abs=1e-12, subspace_tol=1e-7, psd_tol=1e-10)
    assert tolerance_from_dict(tolerance_to_dict(tol)) == tol
    assert tolerance_from_dict(tolerance_to_dict(TolerancePolicy())) == TolerancePolicy()


def test_classification_document_round_trip():
    rep = classify(np.diag([1.0, 2.0, 0.0]))
    doc = make_document("classification", rep, "sha256:xyz", TolerancePolicy())
    kind, decoded, digest, tol = decode_document(roundtrip(doc))
    assert kind == "classification" and digest == "sha256:xyz"
    assert tol == TolerancePolicy()
    assert decoded == rep


def test_penrose_document_round_trip():
    rng = np.random.default_rng(0)
    a = random_complex(rng, 3, 4)
    rep = penrose_verify(a, pinv(a))
    doc = make_document("penrose", rep, "sha256:abc", TolerancePolicy())
    _, decoded, _, _ = decode_document(roundtrip(doc))
    assert decoded == rep


def test_douglas_document_round_trip():
    rng = np.random.default_rng(1)
    b = random_complex(rng, 4, 3)
    rep = douglas_factorize(b @ random_complex(rng, 3, 2), b)
    doc = make_document("douglas", rep, "sha256:d", TolerancePolicy())
    _, decoded, _, _ = decode_document(roundtrip(doc))
    assert decoded.range_included == rep.range_included
    assert decoded.residual_range == rep.residual_range
    assert decoded.residual_bc_a == rep.residual_bc_a
    assert decoded.bound_k == rep.bound_k
    assert decoded.contraction_ok is None
    np.testing.assert_array_equal(decoded.factor_c, rep.factor_c)


def test_perturbation_document_round_trip():
    a = np.diag([2.0, 2.0, 0.0])
    b = np.diag([0.5, 0.0, 0.0])
    rep = check_perturbation(a, b)
    doc = make_document("perturbation", rep, "sha256:p", TolerancePolicy())
    _, decoded, _, _ = decode_document(roundtrip(doc))
    assert decoded == rep


def test_document_carries_version_and_tolerance():
    rep = classify(np.eye(2))
    tol = TolerancePolicy(subspace_tol=1e-5)
    doc = make_document("classification", rep, "sha256:v", tol)
    assert doc["tool_version"] == eplab.__version__
    assert doc["tolerance"]["subspace_tol"] == 1e-5
    assert doc["tolerance"]["rank_rel"] is None


def test_dump_document_deterministic():
    rep = classify(np.diag([1.0, 0.0]))
    doc = make_document("classification", rep, "sha256:s", TolerancePolicy())
    assert dump_document(doc) == dump_document(
        make_document("classification", classify(np.diag([1.0, 0.0])),
                      "sha256:s", TolerancePolicy()))
