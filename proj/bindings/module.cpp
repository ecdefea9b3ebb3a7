#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "branegauge/cech.hpp"
#include "branegauge/complexes.hpp"
#include "branegauge/ext.hpp"
#include "branegauge/gauge.hpp"
#include "branegauge/io.hpp"

namespace py = pybind11;

namespace {

using branegauge::BraneComplex;
using branegauge::Error;
using branegauge::Json;

BraneComplex parse_or_throw(const std::string& text) {
  return branegauge::parse_brane(text);
}

std::string dims_payload(const branegauge::CohomologyResult& res) {
  Json out;
  out["dims"] = branegauge::json_of_dims(res.dims);
  out["truncation"] = res.truncation;
  return out.dump();
}

std::string cohomology_json(const std::string& doc,
                            std::optional<int> truncation) {
  branegauge::TotalOptions opts;
  opts.truncation = truncation;
  return dims_payload(branegauge::hypercohomology(parse_or_throw(doc), opts));
}

std::string ext_dims_json(const std::string& a, const std::string& b,
                          std::optional<int> truncation) {
  BraneComplex ca = parse_or_throw(a);
  BraneComplex cb = parse_or_throw(b);
  if (ca.n != cb.n)
    throw Error(Error::Kind::InvalidInput,
                "documents live over different projective spaces");
  branegauge::HomComplexData hom = branegauge::hom_complex(ca, cb);
  branegauge::TotalOptions opts;
  opts.truncation = truncation;
  return dims_payload(branegauge::hypercohomology(hom.cx, opts));
}

std::string omega_cohomology_json(int n, int p, int k,
                                  std::optional<int> truncation) {
  auto rep = branegauge::omega_replacement(branegauge::line_bundle(n, k), p);
  branegauge::TotalOptions opts;
  opts.truncation = truncation;
  return dims_payload(branegauge::hypercohomology(rep.cx, opts));
}

std::string gauge_json(const std::string& doc, bool want_witness,
                       std::optional<int> truncation) {
  branegauge::GaugeOptions opts;
  opts.want_witness = want_witness;
  opts.truncation = truncation;
  branegauge::GaugeDecision d =
      branegauge::gauge_exists(parse_or_throw(doc), opts);
  Json out = branegauge::json_of(d);
  if (want_witness && d.witness) out["witness"] = branegauge::json_of(*d.witness);
  out["truncation"] = d.truncation;
  return out.dump();
}

std::string classify_json(const std::string& doc) {
  Json out = branegauge::json_of(branegauge::classify_brane(parse_or_throw(doc)));
  return out.dump();
}

std::string audit_json(const std::string& doc) {
  Json out = branegauge::json_of(branegauge::gauge_hom_audit(parse_or_throw(doc)));
  return out.dump();
}

std::string canonical_document(const std::string& doc) {
  return branegauge::serialize_brane(parse_or_throw(doc));
}

std::string line_bundle_document(int n, int k, int position) {
  return branegauge::serialize_brane(branegauge::line_bundle(n, k, position));
}

std::string random_brane_document(int n, int depth, unsigned long long seed) {
  return branegauge::serialize_brane(branegauge::random_brane(n, depth, seed));
}

std::string shift_document(const std::string& doc, int l) {
  return branegauge::serialize_brane(branegauge::shift(parse_or_throw(doc), l));
}

std::string twist_document(const std::string& doc, int k) {
  return branegauge::serialize_brane(
      branegauge::twist_complex(parse_or_throw(doc), k));
}

std::string direct_sum_documents(const std::string& a, const std::string& b) {
  return branegauge::serialize_brane(
      branegauge::direct_sum(parse_or_throw(a), parse_or_throw(b)));
}

int truncation_bound_of(const std::string& doc) {
  return branegauge::truncation_bound(parse_or_throw(doc));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact engine for line-bundle brane complexes on P^n";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      if (e.kind() == Error::Kind::InvalidInput)
        PyErr_SetString(PyExc_ValueError, e.what());
      else
        PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  m.def("canonical_document", &canonical_document, py::arg("doc"),
        "parse a brane document and return its canonical serialization");
  m.def("line_bundle_document", &line_bundle_document, py::arg("n"),
        py::arg("k"), py::arg("position") = 0);
  m.def("random_brane_document", &random_brane_document, py::arg("n"),
        py::arg("depth"), py::arg("seed"));
  m.def("shift_document", &shift_document, py::arg("doc"), py::arg("l"));
  m.def("twist_document", &twist_document, py::arg("doc"), py::arg("k"));
  m.def("direct_sum_documents", &direct_sum_documents, py::arg("a"),
        py::arg("b"));
  m.def("truncation_bound", &truncation_bound_of, py::arg("doc"));

  m.def("cohomology_json", &cohomology_json, py::arg("doc"),
        py::arg("truncation") = std::nullopt,
        "hypercohomology dimensions as a JSON payload");
  m.def("ext_dims_json", &ext_dims_json, py::arg("source"), py::arg("target"),
        py::arg("truncation") = std::nullopt);
  m.def("omega_cohomology_json", &omega_cohomology_json, py::arg("n"),
        py::arg("p"), py::arg("k"), py::arg("truncation") = std::nullopt);
  m.def("gauge_json", &gauge_json, py::arg("doc"),
        py::arg("want_witness") = false, py::arg("truncation") = std::nullopt);
  m.def("classify_json", &classify_json, py::arg("doc"));
  m.def("audit_json", &audit_json, py::arg("doc"));

  m.def("bott_dim", &branegauge::bott_dim, py::arg("n"), py::arg("p"),
        py::arg("k"), py::arg("q"));
  m.def("line_bundle_cohomology", &branegauge::line_bundle_cohomology,
        py::arg("n"), py::arg("m"), py::arg("q"));
}
