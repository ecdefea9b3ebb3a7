#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "branegauge/rational.hpp"

namespace branegauge {

// Exponent vector over the n+1 homogeneous coordinates x0..xn.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& mi);
MultiIndex add_index(const MultiIndex& a, const MultiIndex& b);

// Canonical monomial order: descending lexicographic on exponent vectors,
// i.e. x0^d first, x_n^d last. Used for bases, term maps and printing.
struct LexDesc {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return a > b;
  }
};

using TermMap = std::map<MultiIndex, Rational, LexDesc>;

// Homogeneous polynomial in x0..xn. The zero polynomial has no fixed degree
// (degree == nullopt) so it can sit in any graded slot of a matrix.
struct HomogeneousPoly {
  std::optional<int> degree;
  TermMap terms;

  static HomogeneousPoly zero() { return {}; }
  static HomogeneousPoly monomial(const MultiIndex& mi, const Rational& coef);
  static HomogeneousPoly constant(int n, const Rational& coef);

  bool is_zero() const { return terms.empty(); }
  int vars() const;  // number of variables n+1; 0 for the zero polynomial

  HomogeneousPoly operator+(const HomogeneousPoly& other) const;
  HomogeneousPoly operator-(const HomogeneousPoly& other) const;
  HomogeneousPoly operator*(const HomogeneousPoly& other) const;
  HomogeneousPoly scaled(const Rational& c) const;
  HomogeneousPoly negated() const { return scaled(-1); }

  bool operator==(const HomogeneousPoly& other) const;
};

// d/dx_l, degree drops by one.
HomogeneousPoly partial_derivative(const HomogeneousPoly& p, int l);

// Parses the homogeneous polynomial grammar over x0..xn:
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := coef | coef '*' factors | factors
//   factor := x<i> ['^' <e>]       with 0 <= i <= n, e >= 1
//   coef   := int ['/' uint]
// Whitespace is ignored; all nonzero terms must share one total degree.
HomogeneousPoly parse_poly(const std::string& text, int n);

std::string to_string(const HomogeneousPoly& p);

// All degree-d monomials in n+1 variables, descending lexicographic.
std::vector<MultiIndex> monomial_basis(int n, int d);

// Sorted subsets of {0..n} of the given size, lexicographic on element lists.
std::vector<std::vector<int>> subsets_of_size(int n, int size);

// Exact binomial coefficient; 0 when k < 0 or k > n.
long long binomial(long long n, long long k);

// The polynomial value binom(k + n, n) as a function of an integer k, which
// may be negative (signed, via the falling-factorial product).
long long binomial_poly_dim(long long k, int n);

// Laurent polynomial: exponents of any sign. Only the operations the gauge
// machinery needs.
struct LaurentPoly {
  TermMap terms;

  static LaurentPoly zero() { return {}; }
  static LaurentPoly from(const HomogeneousPoly& p);
  static LaurentPoly monomial(const MultiIndex& mi, const Rational& coef);

  bool is_zero() const { return terms.empty(); }

  LaurentPoly operator+(const LaurentPoly& other) const;
  LaurentPoly operator-(const LaurentPoly& other) const;
  LaurentPoly scaled(const Rational& c) const;
  // Multiplication by coef * x^shift (shift may have negative entries).
  LaurentPoly shifted(const MultiIndex& shift, const Rational& coef) const;
  LaurentPoly times(const LaurentPoly& other) const;

  bool operator==(const LaurentPoly& other) const;
};

LaurentPoly partial_derivative(const LaurentPoly& p, int l);
std::string to_string(const LaurentPoly& p);

}  // namespace branegauge
