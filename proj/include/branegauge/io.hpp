#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "branegauge/complexes.hpp"
#include "branegauge/ext.hpp"
#include "branegauge/gauge.hpp"

namespace branegauge {

// Reports and documents preserve insertion order so a fixed build order
// yields byte-identical output.
using Json = nlohmann::ordered_json;

// Document layout: {"n": int, "label"?: string,
//   "terms": {"<position>": [twist, ...], ...},
//   "diffs": {"<position>": [["poly", ...], ...], ...}}
// Positions are decimal strings; a diff at position p is row-major with
// |term(p+1)| rows and |term(p)| columns. The parsed complex must pass
// validate; errors carry the offending position.
BraneComplex brane_from_json(const Json& doc);
BraneComplex parse_brane(const std::string& text);

// Canonical form: ascending positions, empty terms and all-zero matrices
// dropped, polynomial entries printed by the fixed formatter. Serializing a
// parse of the output reproduces it byte for byte.
Json brane_to_json(const BraneComplex& c);
std::string serialize_brane(const BraneComplex& c);

// FNV-1a 64-bit of the raw bytes, as 16 lowercase hex digits.
std::string input_digest(const std::string& bytes);

Json json_of(const ExtAuditReport& r);
Json json_of(const GaugeWitness& w);
Json json_of(const GaugeDecision& d);
Json json_of(const Classification& c);
Json json_of_dims(const std::map<int, long long>& dims);

}  // namespace branegauge
