#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "branegauge/cech.hpp"
#include "branegauge/complexes.hpp"

namespace branegauge {

// Dimension of the degree-i derived morphism space between two complexes,
// computed from the covering model of their internal-morphism complex.
long long ext_dim(const BraneComplex& a, const BraneComplex& b, int i);

// All degrees with their dimensions over the full support window of the
// internal-morphism complex (zero entries included so callers see the window).
std::map<int, long long> ext_dims(const BraneComplex& a, const BraneComplex& b);

// Degree-0 derived morphisms together with a cohomology basis, each vector
// given as sparse (basis element, coefficient) pairs in the covering model.
struct DerivedHomResult {
  long long dim = 0;
  std::vector<std::vector<std::pair<CechElement, Rational>>> representatives;
};

DerivedHomResult hom_derived(const BraneComplex& a, const BraneComplex& b);

// Dimension at level i of the complex formed by polynomial-entry matrices
// between the terms (global sections only, no covering model).  This ignores
// higher sheaf cohomology on purpose; comparing it against ext_dim shows
// when the shortcut is wrong.
long long naive_hom(const BraneComplex& a, const BraneComplex& b, int i);

// One line per twist difference occurring between same-position summand
// pairs of a complex and its one-form coefficients, with the closed-form
// section count for that difference.
struct TwistLine {
  int difference = 0;        // target twist minus source twist
  long long pairs = 0;       // ordered same-position summand pairs realising it
  long long sections = 0;    // closed-form dim of degree-0 one-form sections
};

// Comparison report for morphisms from a complex into its one-form
// replacement: derived dimensions in degrees 0 and 1, the global-sections
// shortcut in degree 0, and whether the two disagree.
struct ExtAuditReport {
  std::string source;
  std::string target;
  std::map<int, long long> ext;   // degrees 0 and 1 at minimum
  long long naive_hom0 = 0;
  bool discrepancy = false;       // naive_hom0 != ext.at(0)
  std::vector<TwistLine> twist_lines;
  int truncation = 0;
};

ExtAuditReport gauge_hom_audit(const BraneComplex& g,
                               std::optional<int> truncation = {});

// Shared assembly for the audit when the degree-0/1 dimensions were already
// computed on an existing model (the gauge decision reuses its solver model).
ExtAuditReport assemble_gauge_audit(const BraneComplex& g,
                                    const BraneComplex& omega_g, long long ext0,
                                    long long ext1);

}  // namespace branegauge
