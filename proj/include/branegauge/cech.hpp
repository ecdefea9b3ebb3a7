#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>

#include "branegauge/complexes.hpp"
#include "branegauge/linalg.hpp"

namespace branegauge {

// One basis cochain of the truncated Cech total complex: a Laurent monomial
// section of summand `summand` of the term at position `pos`, living on the
// chart intersection encoded by `chart` (bit i set = chart x_i != 0).
// Exponents are >= -truncation on chart coordinates and >= 0 elsewhere.
// The total degree of the element is pos + popcount(chart) - 1.
struct CechElement {
  int pos = 0;
  int summand = 0;
  std::uint32_t chart = 0;
  MultiIndex expo;

  bool operator==(const CechElement&) const = default;
};

std::string to_string(const CechElement& e);

// One Laurent monomial on a chart intersection, the raw span element of a
// twist slice (no position/summand attached).
struct LaurentTerm {
  std::uint32_t chart = 0;
  MultiIndex expo;

  bool operator==(const LaurentTerm&) const = default;
};

// Matrix of multiplication by p from the span of src to the span of tgt.
// A product whose exponent drops below -truncation on a chart coordinate
// vanishes in the cutoff model and is skipped; any other product missing
// from tgt is a closure violation.
QMatrix multiply_matrix(const HomogeneousPoly& p,
                        const std::vector<LaurentTerm>& src,
                        const std::vector<LaurentTerm>& tgt, int truncation);

// Smallest exponent cutoff that the engine accepts for a complex: n + 2 plus
// the largest twist magnitude. Larger cutoffs only add exact, cancelling
// slices, so computed cohomology is stable from this bound onward.
int truncation_bound(const BraneComplex& c);

// Closed form for dim H^q(P^n, O(m)).
long long line_bundle_cohomology(int n, int m, int q);

// Closed form for dim H^q(P^n, Omega^p(k)).
long long bott_dim(int n, int p, int k, int q);

enum class PivotOrder { LeftToRight, RightToLeft };

// Materialized slice of the total complex of a brane over the degree window
// [k_lo, k_hi]: ordered bases per degree and the differentials between
// consecutive window degrees. Elimination runs per connected component of
// the basis-support graph, which leaves results identical to a global pass
// under the fixed pivot rule.
class TotalModel {
 public:
  TotalModel(const BraneComplex& c, int truncation, int k_lo, int k_hi);

  int truncation() const { return truncation_; }
  int k_lo() const { return k_lo_; }
  int k_hi() const { return k_hi_; }
  // Degrees outside [support_lo, support_hi] have empty bases.
  int support_lo() const { return support_lo_; }
  int support_hi() const { return support_hi_; }

  const std::vector<CechElement>& basis(int k) const;
  std::optional<int> index_of(int k, const CechElement& e) const;
  // D_k : basis(k) -> basis(k+1); zero-shaped outside the window.
  const QMatrix& matrix(int k) const;

  bool is_cocycle(int k, const std::vector<Rational>& v) const;

  // dim H^k; requires the window to cover [k-1, k+1] (clipped to support).
  long long dim(int k) const;

  // Solves D_k x = rhs with free variables pinned to zero, component by
  // component. Returns nullopt when no primitive exists.
  std::optional<std::vector<Rational>> solve(
      int k, const std::vector<Rational>& rhs,
      PivotOrder order = PivotOrder::LeftToRight) const;

  // Cohomology class representatives at degree k: kernel vectors with their
  // coboundary components eliminated by the fixed pivot rule.
  std::vector<std::vector<std::pair<int, Rational>>> representatives(
      int k) const;

 private:
  struct Component;
  void ensure_components() const;
  long long rank_of(int k) const;  // rank of D_k, summed over components

  int n_ = 1;
  int truncation_ = 0;
  int k_lo_ = 0;
  int k_hi_ = -1;
  int support_lo_ = 0;
  int support_hi_ = -1;
  std::vector<std::vector<CechElement>> bases_;
  std::vector<QMatrix> mats_;
  QMatrix empty_matrix_;
  std::vector<std::vector<CechElement>> empty_basis_;

  struct ComponentData;
  mutable std::shared_ptr<ComponentData> comps_;
};

struct TotalOptions {
  std::optional<int> truncation;  // must be >= truncation_bound when given
  // Degrees whose dimensions are wanted; the whole support range when empty.
  std::optional<std::pair<int, int>> degrees;
  bool representatives = false;
};

struct CohomologyResult {
  int truncation = 0;
  std::map<int, long long> dims;
  std::map<int, std::vector<std::vector<std::pair<CechElement, Rational>>>>
      representatives;
};

// Hypercohomology of a brane via the truncated Cech total complex. Purely
// monomial complexes take a fast multidegree-blocked route; anything else
// (and any representative request) goes through TotalModel.
CohomologyResult hypercohomology(const BraneComplex& c,
                                 const TotalOptions& opts = {});

}  // namespace branegauge
