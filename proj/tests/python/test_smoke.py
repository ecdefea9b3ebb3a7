import json

import pytest

import branegauge as bg


def test_bott_closed_form():
    assert bg.bott_dim(2, 1, 2, 0) == 3
    assert bg.bott_dim(2, 1, 0, 1) == 1
    assert bg.bott_dim(3, 2, 0, 2) == 1
    assert bg.bott_dim(2, 1, 1, 0) == 0


def test_line_bundle_cohomology():
    assert bg.line_bundle_cohomology(2, 0, 0) == 1
    assert bg.line_bundle_cohomology(2, -3, 2) == 1
    assert bg.line_bundle_cohomology(1, 5, 0) == 6
    assert bg.line_bundle_cohomology(2, -1, 1) == 0


def test_document_round_trip():
    doc = bg.line_bundle_document(2, -1)
    again = bg.canonical_document(doc)
    assert doc == again
    data = json.loads(doc)
    assert data["n"] == 2
    assert data["terms"] == {"0": [-1]}


def test_cohomology_of_structure_sheaf():
    doc = bg.line_bundle_document(2, 0)
    dims = bg.cohomology(doc)
    assert dims.get(0, 0) == 1
    assert all(v == 0 for k, v in dims.items() if k != 0)


def test_ext_between_line_bundles():
    a = bg.line_bundle_document(1, -1)
    b = bg.line_bundle_document(1, 0)
    dims = bg.ext_dims(a, b)
    assert dims.get(0, 0) == 2


def test_omega_sections_vanish():
    dims = bg.omega_cohomology(2, 1, 0)
    assert dims[0] == 0
    assert dims[1] == 1
    assert dims[2] == 0


def test_gauge_decision_matches_twist():
    assert bg.gauge(bg.line_bundle_document(2, 0))["exists"] is True
    assert bg.gauge(bg.line_bundle_document(2, -1))["exists"] is False


def test_classify_reports_agreement():
    res = bg.classify(bg.line_bundle_document(2, -1))
    assert res["predicted"] == "not-exists"
    assert res["engine_exists"] is False
    assert res["agree"] is True


def test_audit_structure():
    res = bg.audit(bg.line_bundle_document(2, -2))
    assert res["naive_hom0"] == 0
    assert "discrepancy" in res
    assert res["ext"]["0"] == 0


def test_generator_is_deterministic():
    a = bg.random_brane_document(2, 1, 7)
    b = bg.random_brane_document(2, 1, 7)
    assert a == b


def test_invalid_document_raises():
    with pytest.raises(ValueError):
        bg.canonical_document("{\"n\": 2}")
