#include "branegauge/io.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "branegauge/poly.hpp"

namespace branegauge {

namespace {

[[noreturn]] void bad_doc(const std::string& what) {
  throw Error(Error::Kind::InvalidInput, "brane document: " + what);
}

int parse_position(const std::string& key) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(key, &used);
  } catch (const std::exception&) {
    bad_doc("position key '" + key + "' is not a decimal integer");
  }
  if (used != key.size())
    bad_doc("position key '" + key + "' has trailing characters");
  return value;
}

}  // namespace

BraneComplex brane_from_json(const Json& doc) {
  if (!doc.is_object()) bad_doc("top level must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    bad_doc("field 'n' must be an integer");
  long long n = doc["n"].get<long long>();
  if (n < 1 || n > 16) bad_doc("'n' must lie in [1, 16]");

  BraneComplex c;
  c.n = static_cast<int>(n);
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) bad_doc("'label' must be a string");
    c.label = doc["label"].get<std::string>();
  }

  if (!doc.contains("terms") || !doc["terms"].is_object())
    bad_doc("field 'terms' must be an object");
  std::map<int, std::vector<int>> terms;
  for (const auto& [key, val] : doc["terms"].items()) {
    int p = parse_position(key);
    if (!val.is_array()) bad_doc("terms[" + key + "] must be an array");
    std::vector<int> twists;
    for (const auto& t : val) {
      if (!t.is_number_integer())
        bad_doc("terms[" + key + "] entries must be integers");
      long long k = t.get<long long>();
      if (k < -1000 || k > 1000)
        bad_doc("terms[" + key + "] twist " + std::to_string(k) +
                " is out of the supported range");
      twists.push_back(static_cast<int>(k));
    }
    if (!terms.emplace(p, std::move(twists)).second)
      bad_doc("terms[" + key + "] appears twice");
  }
  int lo = 0, hi = -1;
  for (const auto& [p, tw] : terms) {
    if (tw.empty()) continue;
    if (hi < lo) {
      lo = hi = p;
    } else {
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
  }
  c.lo = lo;
  if (hi >= lo) {
    c.terms.resize(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [p, tw] : terms) {
      if (tw.empty()) continue;
      c.terms[static_cast<std::size_t>(p - lo)].twists = tw;
    }
    for (int p = lo; p < hi; ++p)
      c.diffs.push_back(
          PolyMatrix::zero(c.term(p + 1).size(), c.term(p).size()));
  }

  if (doc.contains("diffs")) {
    if (!doc["diffs"].is_object()) bad_doc("field 'diffs' must be an object");
    for (const auto& [key, val] : doc["diffs"].items()) {
      int p = parse_position(key);
      if (!val.is_array()) bad_doc("diffs[" + key + "] must be an array");
      const Term& src = c.term(p);
      const Term& tgt = c.term(p + 1);
      if (val.empty()) continue;
      if (static_cast<int>(val.size()) != tgt.size())
        bad_doc("diffs[" + key + "] has " + std::to_string(val.size()) +
                " rows, expected " + std::to_string(tgt.size()));
      PolyMatrix m = PolyMatrix::zero(tgt.size(), src.size());
      bool nonzero = false;
      for (int r = 0; r < tgt.size(); ++r) {
        const auto& row = val[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != src.size())
          bad_doc("diffs[" + key + "] row " + std::to_string(r) +
                  " must have " + std::to_string(src.size()) + " entries");
        for (int cidx = 0; cidx < src.size(); ++cidx) {
          const auto& cell = row[static_cast<std::size_t>(cidx)];
          if (!cell.is_string())
            bad_doc("diffs[" + key + "] entries must be polynomial strings");
          HomogeneousPoly entry;
          try {
            entry = parse_poly(cell.get<std::string>(), c.n);
          } catch (const Error& e) {
            bad_doc("diffs[" + key + "][" + std::to_string(r) + "][" +
                    std::to_string(cidx) + "]: " + e.what());
          }
          if (!entry.terms.empty()) {
            m.set(r, cidx, entry);
            nonzero = true;
          }
        }
      }
      if (!nonzero) continue;
      if (p < c.lo || p >= c.hi())
        bad_doc("diffs[" + key + "] is nonzero but has no adjacent terms");
      c.diffs[static_cast<std::size_t>(p - c.lo)] = std::move(m);
    }
  }

  require_valid(c, "brane document");
  return c;
}

BraneComplex parse_brane(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad_doc(std::string("not valid JSON: ") + e.what());
  }
  return brane_from_json(doc);
}

Json brane_to_json(const BraneComplex& c) {
  Json doc;
  doc["n"] = c.n;
  if (!c.label.empty()) doc["label"] = c.label;
  Json terms = Json::object();
  for (int p = c.lo; p <= c.hi(); ++p) {
    const Term& t = c.term(p);
    if (t.empty()) continue;
    terms[std::to_string(p)] = t.twists;
  }
  doc["terms"] = std::move(terms);
  Json diffs = Json::object();
  for (int p = c.lo; p < c.hi(); ++p) {
    const PolyMatrix* d = c.diff(p);
    if (!d || d->entries.empty()) continue;
    bool nonzero = false;
    Json rows = Json::array();
    for (int r = 0; r < d->rows; ++r) {
      Json row = Json::array();
      for (int cc = 0; cc < d->cols; ++cc) {
        const HomogeneousPoly* e = d->find(r, cc);
        if (e && !e->terms.empty()) {
          row.push_back(to_string(*e));
          nonzero = true;
        } else {
          row.push_back("0");
        }
      }
      rows.push_back(std::move(row));
    }
    if (nonzero) diffs[std::to_string(p)] = std::move(rows);
  }
  doc["diffs"] = std::move(diffs);
  return doc;
}

std::string serialize_brane(const BraneComplex& c) {
  return brane_to_json(c).dump(2) + "\n";
}

std::string input_digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xF];
    h >>= 4;
  }
  return out;
}

Json json_of(const ExtAuditReport& r) {
  Json out;
  out["source"] = r.source;
  out["target"] = r.target;
  Json ext = Json::object();
  for (const auto& [k, v] : r.ext) ext[std::to_string(k)] = v;
  out["ext"] = std::move(ext);
  out["naive_hom0"] = r.naive_hom0;
  out["discrepancy"] = r.discrepancy;
  Json lines = Json::array();
  for (const TwistLine& line : r.twist_lines) {
    Json entry;
    entry["difference"] = line.difference;
    entry["pairs"] = line.pairs;
    entry["sections"] = line.sections;
    lines.push_back(std::move(entry));
  }
  out["twist_lines"] = std::move(lines);
  return out;
}

Json json_of(const GaugeWitness& w) {
  Json entries = Json::array();
  for (const auto& [elem, coef] : w.correction) {
    Json entry;
    entry["position"] = elem.pos;
    entry["summand"] = elem.summand;
    Json chart = Json::array();
    for (int l = 0; l < 32; ++l)
      if (elem.chart & (1u << l)) chart.push_back(l);
    entry["chart"] = std::move(chart);
    entry["exponents"] = elem.expo;
    entry["coefficient"] = to_string(coef);
    entries.push_back(std::move(entry));
  }
  Json out;
  out["correction"] = std::move(entries);
  return out;
}

Json json_of(const GaugeDecision& d) {
  Json out;
  out["exists"] = d.exists;
  out["space_dim"] = d.space_dim;
  if (d.witness)
    out["witness_size"] = static_cast<long long>(d.witness->correction.size());
  out["audit"] = json_of(d.audit);
  return out;
}

Json json_of(const Classification& c) {
  Json out;
  out["predicted"] = to_string(c.predicted);
  out["engine_exists"] = c.engine_exists;
  if (c.agree)
    out["agree"] = *c.agree;
  else
    out["agree"] = nullptr;
  Json chern = Json::object();
  for (const auto& [p, v] : c.chern) chern[std::to_string(p)] = v;
  out["chern"] = std::move(chern);
  out["space_dim"] = c.space_dim;
  return out;
}

Json json_of_dims(const std::map<int, long long>& dims) {
  Json out = Json::object();
  for (const auto& [k, v] : dims) out[std::to_string(k)] = v;
  return out;
}

}  // namespace branegauge
