#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "branegauge/cech.hpp"
#include "branegauge/complexes.hpp"
#include "branegauge/ext.hpp"
#include "branegauge/poly.hpp"

namespace branegauge {

// Coordinate (n+1)-tuple of Laurent polynomials f_0..f_n subject to the
// relation sum_m x_m f_m = 0, the shape of a one-form written in the Euler
// presentation.
struct EulerForm {
  std::vector<LaurentPoly> comps;

  explicit EulerForm(int n = 0) : comps(static_cast<std::size_t>(n) + 1) {}
  bool is_zero() const;
  EulerForm operator+(const EulerForm& other) const;
  EulerForm operator-(const EulerForm& other) const;
  bool operator==(const EulerForm& other) const = default;
};

// The curvature-type obstruction cochain of a brane, written against the
// one-form replacement of the complex:
//  - alpha: for each chart pair l < l', per position, one Euler tuple per
//    summand (diagonal): twist k contributes k * (x_{l'}^{-1} e_{l'} -
//    x_l^{-1} e_l) evaluated componentwise.
//  - beta: for each chart l and position p, per differential entry h from
//    summand i of term p to summand j of term p+1 (a = twist_src -
//    twist_tgt): component m is d/dx_m h + a * h * x_l^{-1} [m == l].
// Zero tuples are omitted. Construction verifies the symbolic closure
// relations exactly and throws on failure.
struct AtiyahCocycle {
  int n = 0;
  // keyed (l, l') -> position -> summand index -> tuple
  std::map<std::pair<int, int>, std::map<int, std::map<int, EulerForm>>> alpha;
  // keyed l -> source position p -> (tgt summand j, src summand i) -> tuple
  std::map<int, std::map<int, std::map<std::pair<int, int>, EulerForm>>> beta;

  bool is_zero() const { return alpha.empty() && beta.empty(); }
};

AtiyahCocycle atiyah_cocycle(const BraneComplex& g);

// Writes the cocycle as a degree-1 coordinate vector of the covering model
// of Hom(g, one-form replacement of g).
std::vector<Rational> embed_atiyah(const AtiyahCocycle& ac,
                                   const HomComplexData& hom,
                                   const OmegaReplacementData& omega,
                                   const TotalModel& model);

// Primitive trivialising the obstruction: sparse degree-0 coordinates of the
// same covering model. Empty means the zero primitive.
struct GaugeWitness {
  std::vector<std::pair<CechElement, Rational>> correction;
};

struct GaugeDecision {
  bool exists = false;
  long long space_dim = 0;  // dimension of the degree-0 derived morphism space
  std::optional<GaugeWitness> witness;
  ExtAuditReport audit;
  int truncation = 0;
};

struct GaugeOptions {
  bool want_witness = true;
  PivotOrder pivot = PivotOrder::LeftToRight;
  // Exponent cutoff for the covering model of the morphism complex; must be
  // at least its required bound. Defaults to the bound itself.
  std::optional<int> truncation;
};

// Decides whether the obstruction cochain is a coboundary. When it is, the
// affine space of solutions is nonempty with dimension space_dim; the witness
// is the primitive picked by the fixed pivot rule and is re-checked exactly.
GaugeDecision gauge_exists(const BraneComplex& g, const GaugeOptions& opts = {});

// For complexes whose summands are all O(0) with constant differentials the
// obstruction vanishes identically; returns the zero primitive after checking
// that the residual is exactly zero. Anything else is rejected.
GaugeWitness canonical_gauge_field(const BraneComplex& g);

enum class PredictedGauge { Exists, NotExists, NotCovered };

std::string to_string(PredictedGauge p);

// Side-by-side of the twist-based expectation and the engine decision.
// Prediction: all twists zero -> Exists; twists within [-n, 0] with some
// negative -> NotExists; anything outside that range -> NotCovered. The
// engine decision is always the computed one; agree is empty when the
// prediction abstains.
struct Classification {
  PredictedGauge predicted = PredictedGauge::NotCovered;
  bool engine_exists = false;
  std::optional<bool> agree;
  std::map<int, long long> chern;  // per-position first Chern numbers
  long long space_dim = 0;
  int truncation = 0;
};

Classification classify_brane(const BraneComplex& g,
                              std::optional<int> truncation = {});

}  // namespace branegauge
