"""Exact engine for line-bundle brane complexes on P^n.

Thin convenience layer over the compiled core: documents are JSON strings in
the same format the command-line tool reads, and report payloads are decoded
into plain dictionaries.
"""

import json as _json

from ._core import (
    bott_dim,
    canonical_document,
    direct_sum_documents,
    line_bundle_cohomology,
    line_bundle_document,
    random_brane_document,
    shift_document,
    truncation_bound,
    twist_document,
)
from . import _core

__all__ = [
    "bott_dim",
    "canonical_document",
    "direct_sum_documents",
    "line_bundle_cohomology",
    "line_bundle_document",
    "random_brane_document",
    "shift_document",
    "truncation_bound",
    "twist_document",
    "cohomology",
    "ext_dims",
    "omega_cohomology",
    "gauge",
    "classify",
    "audit",
]


def _decode_dims(payload):
    data = _json.loads(payload)
    return {int(k): v for k, v in data["dims"].items()}, data["truncation"]


def cohomology(doc, truncation=None):
    """Hypercohomology dimensions of a document: {degree: dim}."""
    dims, _ = _decode_dims(_core.cohomology_json(doc, truncation))
    return dims


def ext_dims(source, target, truncation=None):
    """Derived morphism dimensions between two documents: {degree: dim}."""
    dims, _ = _decode_dims(_core.ext_dims_json(source, target, truncation))
    return dims


def omega_cohomology(n, p, k, truncation=None):
    """H^q of the twisted p-form sheaf on P^n via its replacement complex."""
    dims, _ = _decode_dims(_core.omega_cohomology_json(n, p, k, truncation))
    return {q: dims.get(q, 0) for q in range(n + 1)}


def gauge(doc, want_witness=False, truncation=None):
    """Gauge-field decision for a document, as a dictionary."""
    return _json.loads(_core.gauge_json(doc, want_witness, truncation))


def classify(doc):
    """Twist-based expectation vs engine decision."""
    return _json.loads(_core.classify_json(doc))


def audit(doc):
    """Derived vs global-section morphism counts into the one-form twist."""
    return _json.loads(_core.audit_json(doc))
